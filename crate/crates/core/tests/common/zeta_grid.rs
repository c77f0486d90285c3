//! Zeta on the acceptance grid, computed with 40-digit arithmetic.

/// (σ, t, Re ζ, Im ζ)
pub const GRID: &[(f64, f64, f64, f64)] = &[
    (0.25, 0.0, -0.8132784052618916565214478, 0.0),
    (
        0.25,
        1.0,
        0.043895320061383209599933,
        -0.5600051143147903243378518,
    ),
    (
        0.25,
        14.1347,
        -0.2163008718745107493513389,
        -0.0392834144815806336510809,
    ),
    (
        0.25,
        30.0,
        -0.5864827888392179465625849,
        -0.6111496310764428078252223,
    ),
    (0.5, 0.0, -1.460354508809586812889499, 0.0),
    (
        0.5,
        1.0,
        0.1439364270771890603243897,
        -0.7220997435316730891261751,
    ),
    (
        0.5,
        14.1347,
        0.00000313536422129125767737846,
        -0.00001969336046240108562838684,
    ),
    (
        0.5,
        30.0,
        -0.1206422875900436999140211,
        -0.5836912147637062887576358,
    ),
    (0.9, 0.0, -9.430114019402254591106782, 0.0),
    (
        0.9,
        1.0,
        0.4757132313909079990810357,
        -0.9159495733024656314260867,
    ),
    (
        0.9,
        14.1347,
        0.2688455583620168270393471,
        0.03451432946549912532495954,
    ),
    (
        0.9,
        30.0,
        0.3444386921801068803776404,
        -0.5037037362047883982073989,
    ),
    (1.5, 0.0, 2.612375348685488343348568, 0.0),
    (
        1.5,
        1.0,
        1.017676719487493567476877,
        -0.7320812572331683217448269,
    ),
    (
        1.5,
        14.1347,
        0.5421146528590678831995327,
        0.0498644666514182393735641,
    ),
    (
        1.5,
        30.0,
        0.6908557315228128278428207,
        -0.3671427473747211711691011,
    ),
    (2.0, 0.0, 1.644934066848226436472415, 0.0),
    (
        2.0,
        1.0,
        1.15035570325490267174285,
        -0.4375308659196078811175279,
    ),
    (
        2.0,
        14.1347,
        0.6891865311765121939047411,
        0.04751801204534817423161723,
    ),
    (
        2.0,
        30.0,
        0.8258798243158263752331353,
        -0.2690338274973063109890432,
    ),
    (3.0, 0.0, 1.202056903159594285399738, 0.0),
    (
        3.0,
        1.0,
        1.1072144084314091956251,
        -0.1482908671781753484907641,
    ),
    (
        3.0,
        14.1347,
        0.8554364415857744423678468,
        0.03231247412784927728144799,
    ),
    (
        3.0,
        30.0,
        0.9365853681541057681990584,
        -0.1359171988090308639946303,
    ),
];

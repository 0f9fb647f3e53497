// Generated by tools/gen_oracles.py; do not edit.
#![allow(dead_code, clippy::approx_constant)]

/// (nu, x, J_nu(x))
pub const BESSEL_J: &[(f64, f64, f64)] = &[
    (0.0, 0.05, 0.9993750976494686),
    (0.0, 0.7, 0.8812008886074053),
    (0.0, 1.9, 0.28181855937438555),
    (0.0, 2.3, 0.05553978444560206),
    (0.0, 5.0, -0.1775967713143383),
    (0.0, 11.0, -0.1711903004071961),
    (0.0, 25.5, 0.14406215754684787),
    (0.0, 49.0, -0.05290003332227351),
    (0.0, 51.0, 0.11156465824468607),
    (0.0, 99.9, 0.012180433516928978),
    (0.0, 150.0, -0.0007740903753942912),
    (0.0, 200.0, -0.015437439930565091),
    (0.4, 0.05, 0.257590197779947),
    (0.4, 0.7, 0.6774171432823328),
    (0.4, 1.9, 0.5149537539466025),
    (0.4, 2.3, 0.338841879398351),
    (0.4, 5.0, -0.32318927280285537),
    (0.4, 11.0, -0.237552535794001),
    (0.4, 25.5, 0.0788595000569503),
    (0.4, 49.0, -0.10205948500782112),
    (0.4, 51.0, 0.08686876906090375),
    (0.4, 99.9, -0.036461338729650246),
    (0.4, 150.0, -0.038888089002212536),
    (0.4, 200.0, -0.04437188343918953),
    (1.0, 0.05, 0.0249921883137597),
    (1.0, 0.7, 0.32899574154005895),
    (1.0, 1.9, 0.5811570727134341),
    (1.0, 2.3, 0.5398725326043137),
    (1.0, 5.0, -0.32757913759146523),
    (1.0, 11.0, -0.17678529895672151),
    (1.0, 25.5, -0.062048536491484105),
    (1.0, 49.0, -0.10150612803431056),
    (1.0, 51.0, -0.00486213436802908),
    (1.0, 99.9, -0.07883316632415577),
    (1.0, 150.0, -0.06514516365772736),
    (1.0, 200.0, -0.05430453818237822),
    (1.7, 0.05, 0.0012233685550896887),
    (1.7, 0.7, 0.10381234911713538),
    (1.7, 1.9, 0.4176970642406775),
    (1.7, 2.3, 0.4843690948014925),
    (1.7, 5.0, -0.08508976734525041),
    (1.7, 11.0, 0.04568510333565595),
    (1.7, 25.5, -0.157296632259288),
    (1.7, 49.0, -0.002062443054015175),
    (1.7, 51.0, -0.1008112133976066),
    (1.7, 99.9, -0.04760486905530256),
    (1.7, 150.0, -0.029446343992932028),
    (1.7, 200.0, -0.01128117319342162),
    (2.5, 0.05, 2.9730092411405302e-05),
    (2.5, 0.7, 0.021053968866313298),
    (2.5, 1.9, 0.20291809419040988),
    (2.5, 2.3, 0.2873850376581271),
    (2.5, 5.0, 0.24037720111131736),
    (2.5, 11.0, 0.23431400122155968),
    (2.5, 25.5, -0.07382035512282865),
    (2.5, 49.0, 0.10647853052074902),
    (2.5, 51.0, -0.07967331310433985),
    (2.5, 99.9, 0.04514285498333707),
    (2.5, 150.0, 0.04565476442015942),
    (2.5, 200.0, 0.04885452923635856),
    (7.3, 0.05, 2.1742837504902274e-16),
    (7.3, 0.7, 4.985040830813818e-08),
    (7.3, 1.9, 6.641499913741322e-05),
    (7.3, 2.3, 0.0002544933258231145),
    (7.3, 5.0, 0.03940912957741964),
    (7.3, 11.0, 0.08940082397755382),
    (7.3, 25.5, -0.02523063318941523),
    (7.3, 49.0, 0.10515767195896383),
    (7.3, 51.0, 0.0001497179683693019),
    (7.3, 99.9, 0.0798298864086783),
    (7.3, 150.0, 0.062167983974760255),
    (7.3, 200.0, 0.046091663912335476),
    (20.0, 0.05, 3.738200843297966e-51),
    (20.0, 0.7, 3.1095858376600627e-28),
    (20.0, 1.9, 1.4114480267847642e-19),
    (20.0, 2.3, 6.316008253020625e-18),
    (20.0, 5.0, 2.7703300521289416e-11),
    (20.0, 11.0, 5.930935128850572e-05),
    (20.0, 25.5, -0.010332438476309071),
    (20.0, 49.0, -0.05885337415888329),
    (20.0, 51.0, -0.0829412388175818),
    (20.0, 99.9, 0.06696714632753709),
    (20.0, 150.0, 0.06344724095386198),
    (20.0, 200.0, 0.03745093871086004),
    (33.6, 0.05, 2.0641186496492915e-92),
    (33.6, 0.7, 6.654368109803215e-54),
    (33.6, 1.9, 2.4218048141070066e-39),
    (33.6, 2.3, 1.4682394325689656e-36),
    (33.6, 5.0, 2.7295622687100786e-25),
    (33.6, 11.0, 4.3214850484827107e-14),
    (33.6, 25.5, 0.001211528209360908),
    (33.6, 49.0, 0.04871863796315318),
    (33.6, 51.0, -0.11525520698799654),
    (33.6, 99.9, -0.016630695421456947),
    (33.6, 150.0, 0.06270521383931352),
    (33.6, 200.0, 0.00219427067660631),
    (50.0, 0.05, 2.593702967352047e-145),
    (50.0, 0.7, 5.239431449834897e-88),
    (50.0, 1.9, 2.485528655648863e-66),
    (50.0, 2.3, 3.4717822892165326e-62),
    (50.0, 5.0, 2.2942476159525402e-45),
    (50.0, 11.0, 1.8878689558783877e-28),
    (50.0, 25.5, 2.3006710981889486e-11),
    (50.0, 49.0, 0.09204579437793345),
    (50.0, 51.0, 0.1500122458584071),
    (50.0, 99.9, -0.03195809252907889),
    (50.0, 150.0, -0.057300163341716066),
    (50.0, 200.0, 0.015693898978573085),
];

/// (nu, m, j_{nu,m})
pub const BESSEL_ZEROS: &[(f64, usize, f64)] = &[
    (0.0, 1, 2.404825557695773),
    (0.0, 2, 5.520078110286311),
    (0.0, 3, 8.653727912911013),
    (0.0, 10, 30.634606468431976),
    (0.0, 25, 77.75602563038805),
    (0.4, 1, 2.998849171966659),
    (0.4, 2, 6.13335049782515),
    (0.4, 3, 9.272523677769229),
    (0.4, 10, 31.260285684147682),
    (0.4, 25, 78.38331076146989),
    (1.0, 1, 3.8317059702075125),
    (1.0, 2, 7.015586669815619),
    (1.0, 3, 10.173468135062722),
    (1.0, 10, 32.189679910974405),
    (1.0, 25, 79.3204871754763),
    (1.7, 1, 4.752290482303205),
    (1.7, 2, 8.003948977863987),
    (1.7, 3, 11.192057599397545),
    (1.7, 10, 33.26120630516495),
    (1.7, 25, 80.40835643868301),
    (2.5, 1, 5.76345919689455),
    (2.5, 2, 9.095011330476355),
    (2.5, 3, 12.322940970566583),
    (2.5, 10, 34.47048833128499),
    (2.5, 25, 81.64466440138234),
    (7.3, 1, 11.429093752762),
    (7.3, 2, 15.18772220790456),
    (7.3, 3, 18.669314767036244),
    (7.3, 10, 41.4561630857989),
    (7.3, 25, 88.9228472829564),
    (20.0, 1, 25.417140814072525),
    (20.0, 2, 29.961603791625155),
    (20.0, 3, 33.98870278523519),
    (20.0, 10, 58.60202207384672),
    (20.0, 25, 107.30225447413109),
    (50.0, 1, 57.116899160119175),
    (50.0, 2, 62.80769876483536),
    (50.0, 3, 67.69740841076478),
    (50.0, 10, 95.8011082659533),
    (50.0, 25, 147.75151499901244),
];

/// (|z|, Re F, Im F) on the ray arg z = pi/4
pub const KUMMER_F: &[(f64, f64, f64)] = &[
    (0.0, 1.772453850905516, 0.0),
    (0.3, 1.5630836164186976, -0.17540834703292918),
    (1.0, 1.138995659671456, -0.3738677119284468),
    (2.5, 0.6070085208230366, -0.38700823066236645),
    (4.0, 0.3793899946375949, -0.303525447589694),
    (6.0, 0.24628203198502394, -0.2211328362466913),
    (7.0, 0.20913003683660905, -0.19301415272716682),
    (8.0, 0.18172280008051106, -0.17082727741290585),
    (8.5, 0.1705601687825707, -0.16145016482671706),
    (10.0, 0.14406580086629928, -0.1384420770145697),
    (13.0, 0.11002489611301226, -0.10745544989454209),
    (20.0, 0.07105880046290215, -0.07035195843060722),
    (50.0, 0.028306844142661002, -0.028261589743093955),
    (100.0, 0.014144962352104745, -0.014139305501249358),
    (200.0, 0.007071421312209806, -0.007070714205455136),
];

/// (x, Gamma(x))
pub const GAMMA: &[(f64, f64)] = &[
    (0.1, 9.51350769866873),
    (0.5, 1.772453850905516),
    (1.3, 0.8974706963062772),
    (2.6, 1.4296245588603045),
    (5.0, 24.0),
    (7.25, 1155.3810139199898),
    (12.5, 136843365.46556586),
    (30.0, 8.841761993739702e+30),
];

/// (x, J_0(x), Y_0(x))
pub const BESSEL_J0_Y0: &[(f64, f64, f64)] = &[
    (0.01, 0.9999750001562495, -3.005455637083646),
    (0.5, 0.9384698072408129, -0.44451873350670656),
    (1.0, 0.7651976865579666, 0.08825696421567696),
    (3.0, -0.26005195490193345, 0.3768500100127904),
    (6.0, 0.15064525725099692, -0.28819468398157916),
    (10.0, -0.24593576445134835, 0.055671167283599395),
    (17.0, -0.16985425215118355, -0.0926371984423237),
    (19.9, 0.17287775639261846, 0.04576209415938548),
    (30.0, -0.08636798358104021, -0.11729573168666403),
];

/// (sigma, t, <E(t)f, f>) for a planar Gaussian of width sigma
pub const PLANAR_GAUSSIAN_PAIRING: &[(f64, f64, f64)] = &[
    (0.05, 0.001, 3.926467260097152e-06),
    (0.05, 0.05, 0.00014230991764354765),
    (0.05, 0.1, 0.00012566136458998537),
    (0.05, 0.3, 3.37230436004821e-05),
    (0.05, 0.9, 1.0942292096584902e-05),
];

/// (rho, t, r1, r2, theta1 - theta2, diffracted kernel)
pub const DIFF_KERNEL: &[(f64, f64, f64, f64, f64, f64)] = &[
    (2.0, 1.0, 0.3, 0.4, 1.5707963267948966, -0.09188814923696534),
    (0.7, 1.3, 0.5, 0.2, 0.4, 0.06570114207486175),
    (3.0, 2.0, 0.6, 0.9, -1.0, -0.05020201276243018),
    (2.0, 1.0, 0.3, 0.4, 3.1315926535897933, -0.11142943762717142),
    (1.5, 0.75, 0.3, 0.4, 2.0, -0.14219086934695455),
    (2.0, 5.0, 1.0, 1.5, 0.3, -0.01603914859154162),
];

/// (delta, xi, chi(xi)) for chi_hat(t) = B((|t| - 3 delta/2)/(delta/2))
pub const CHI: &[(f64, f64, f64)] = &[
    (0.1, 0.0, 0.007066381054538413),
    (0.1, 3.0, 0.006351591260140762),
    (0.1, 17.5, -0.005780232721363432),
    (0.1, 40.0, 0.004865578335290998),
    (0.1, 120.0, -0.0004129885206680019),
    (0.25, 0.0, 0.01766595263634603),
    (0.25, 3.0, 0.007532793207910001),
    (0.25, 17.5, 0.011358548426305572),
    (0.25, 40.0, 6.415682755657866e-06),
    (0.25, 120.0, -0.0001197303081768276),
];

/// (delta, lambda, z, planar chi(sqrt(Delta) - lambda) kernel)
pub const R2_CLUSTER: &[(f64, f64, f64, f64)] = &[
    (0.1, 50.0, 0.05, 2.57071110555764),
    (0.1, 200.0, 0.05, -0.736788818243494),
    (0.1, 200.0, 0.13, 9.243327126952678),
    (0.1, 200.0, 0.19, 0.5491405977924059),
    (0.25, 80.0, 0.3, -0.734972011747916),
    (0.1, 200.0, 0.25, 0.0),
];

/// (mu, a^2, theta, Re, Im) of int_0^inf e^{i mu s^2} theta/(a^2 s^2 + theta^2) ds
pub const H_MODEL: &[(f64, f64, f64, f64, f64)] = &[
    (0.5, 0.3, 0.01, 2.8383309499668954, 0.02906620151962358),
    (1.0, 0.3, -0.3, -1.7644674145471917, -0.6239868656286499),
    (1.1, 0.3, 0.02, 2.780318791760937, 0.08351189279061583),
    (0.8, 0.36, 1.5, 0.49783525287032626, 0.4140550338825022),
    (0.3, 0.2, 0.0001, 3.512064131311471, 0.0003431815296457727),
    (0.9, 0.3, 2.5, 0.2706451338303779, 0.2566974685450691),
];

/// (x, Re H0(x), Im H0(x)) for the first Hankel function
pub const HANKEL_H0: &[(f64, f64, f64)] = &[
    (20.0, 0.16702466434058316, 0.06264059680938383),
    (25.0, 0.09626678327595811, -0.12724943226800614),
    (60.0, -0.09147180408906187, 0.0473589522094494),
    (400.0, -0.03882518153078396, -0.00917351986075936),
];

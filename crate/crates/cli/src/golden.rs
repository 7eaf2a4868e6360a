//! Published reference values, as printed (ten significant digits, truncated).

/// `β_0^{(ν,n)}` rows for `ν = 5, 10, …, 30`, `n = 0 … 3`.
pub const TABLE1: [(u32, [&str; 4]); 6] = [
    (5, ["1.846838425", "6.287049333", "13.56824532", "24.21585798"]),
    (10, ["1.839160212", "6.196784392", "13.13767165", "22.79428563"]),
    (15, ["1.837192594", "6.174300067", "13.03554186", "22.48225348"]),
    (20, ["1.836407529", "6.165399473", "12.99562834", "22.36253197"]),
    (25, ["1.836016970", "6.160986334", "12.97594386", "22.30392905"]),
    (30, ["1.835794835", "6.158480669", "12.96479836", "22.27087450"]),
];

/// `((n, l), E_nl(1, 0))`.
pub const TABLE2: [((u32, u32), &str); 27] = [
    ((0, 0), "4.934802200"),
    ((0, 1), "10.09536427"),
    ((1, 0), "19.73920880"),
    ((0, 2), "16.60873095"),
    ((1, 1), "29.83975797"),
    ((2, 0), "44.41321980"),
    ((0, 3), "24.41559682"),
    ((1, 2), "41.35961555"),
    ((2, 1), "59.44993458"),
    ((3, 0), "78.95683520"),
    ((0, 4), "33.47715596"),
    ((1, 3), "54.25817941"),
    ((2, 2), "75.92743708"),
    ((3, 1), "98.92890559"),
    ((4, 0), "123.3700550"),
    ((0, 5), "43.76561012"),
    ((1, 4), "68.50242574"),
    ((2, 3), "93.81791915"),
    ((3, 2), "120.3514532"),
    ((4, 1), "148.2772060"),
    ((5, 0), "177.6528792"),
    ((0, 6), "55.25985415"),
    ((1, 5), "84.06545236"),
    ((2, 4), "113.0957572"),
    ((3, 3), "143.2044787"),
    ((4, 2), "174.6400399"),
    ((5, 1), "207.4949921"),
];

/// `(β, l, E_{0..3,l}(1, β))`.
pub const TABLE3: [(i64, u32, [&str; 4]); 6] = [
    (2, 0, ["-0.5", "13.31003662", "37.25660174", "71.26437398"]),
    (2, 2, ["13.31003662", "37.25660174", "71.26437398", "115.2540228"]),
    (6, 1, ["-2", "15.17434035", "42.95936431", "81.04494034"]),
    (6, 3, ["15.17434035", "42.95936431", "81.04494034", "129.2643219"]),
    (12, 2, ["-4.5", "15.84159512", "47.2388141", "89.18513747"]),
    (12, 4, ["15.84159512", "47.2388141", "89.18513747", "141.4317571"]),
];

/// `β^c_{nl}`, row `l`, column `n`.
pub const TABLE4: [[&str; 4]; 4] = [
    ["1.835246330", "6.152307040", "12.93743173", "22.19009585"],
    ["5.088308227", "11.90969656", "21.17443122", "32.90010678"],
    ["9.617366041", "19.03014419", "30.81193326", "45.03068523"],
    ["15.36345002", "27.45875083", "41.80446073", "58.54453721"],
];

//! Non-zero coefficients of `P_α` (with `ΔP_α = (x - z)^α`) for `|α| ≤ 10`,
//! as `(positions, numerators, denominator)` in the linear enumeration.

pub(super) type RawRow = (&'static [usize], &'static [i64], i64);

#[rustfmt::skip]
pub(super) static ROWS: [RawRow; 66] = [
    // |α| = 0
    (&[3, 5], &[1, 1], 4),
    // |α| = 1
    (&[6, 8], &[1, 1], 8),
    (&[7, 9], &[1, 1], 8),
    // |α| = 2
    (&[10, 12, 14], &[7, 6, -1], 96),
    (&[11, 13], &[1, 1], 12),
    (&[10, 12, 14], &[-1, 6, 7], 96),
    // |α| = 3
    (&[15, 17, 19], &[3, 2, -1], 64),
    (&[16, 18, 20], &[11, 10, -1], 192),
    (&[15, 17, 19], &[-1, 10, 11], 192),
    (&[16, 18, 20], &[-1, 2, 3], 64),
    // |α| = 4
    (&[21, 23, 25, 27], &[31, 15, -15, 1], 960),
    (&[22, 24, 26], &[13, 10, -3], 320),
    (&[21, 23, 25, 27], &[-1, 15, 15, -1], 360),
    (&[22, 24, 26], &[-3, 10, 13], 320),
    (&[21, 23, 25, 27], &[1, -15, 15, 31], 960),
    // |α| = 5
    (&[28, 30, 32, 34], &[9, 3, -5, 1], 384),
    (&[29, 31, 33, 35], &[57, 35, -21, 1], 1920),
    (&[28, 30, 32, 34], &[-3, 63, 55, -11], 1920),
    (&[29, 31, 33, 35], &[-11, 55, 63, -3], 1920),
    (&[28, 30, 32, 34], &[1, -21, 35, 57], 1920),
    (&[29, 31, 33, 35], &[1, -5, 3, 9], 384),
    // |α| = 6
    (&[36, 38, 40, 42, 44], &[127, 28, -70, 28, -1], 7168),
    (&[37, 39, 41, 43], &[15, 7, -7, 1], 672),
    (&[36, 38, 40, 42, 44], &[-99, 2772, 2030, -812, 29], 107520),
    (&[37, 39, 41, 43], &[-1, 7, 7, -1], 280),
    (&[36, 38, 40, 42, 44], &[29, -812, 2030, 2772, -99], 107520),
    (&[37, 39, 41, 43], &[1, -7, 7, 15], 672),
    (&[36, 38, 40, 42, 44], &[-1, 28, -70, 28, 127], 7168),
    // |α| = 7
    (&[45, 47, 49, 51, 53], &[85, 12, -42, 28, -3], 6144),
    (&[46, 48, 50, 52, 54], &[247, 84, -126, 36, -1], 14336),
    (&[45, 47, 49, 51, 53], &[-73, 2628, 1554, -1036, 111], 129024),
    (&[46, 48, 50, 52, 54], &[-489, 4564, 3906, -1116, 31], 215040),
    (&[45, 47, 49, 51, 53], &[31, -1116, 3906, 4564, -489], 215040),
    (&[46, 48, 50, 52, 54], &[111, -1036, 1554, 2628, -73], 129024),
    (&[45, 47, 49, 51, 53], &[-1, 36, -126, 84, 247], 14336),
    (&[46, 48, 50, 52, 54], &[-3, 28, -42, 12, 85], 6144),
    // |α| = 8
    (&[55, 57, 59, 61, 63, 65], &[511, 45, -210, 210, -45, 1], 46080),
    (&[56, 58, 60, 62, 64], &[251, 60, -126, 60, -5], 18432),
    (&[55, 57, 59, 61, 63, 65], &[-233, 10485, 4830, -4830, 1035, -23], 645120),
    (&[56, 58, 60, 62, 64], &[-191, 2292, 1638, -780, 65], 129024),
    (&[55, 57, 59, 61, 63, 65], &[1, -45, 210, 210, -45, 1], 12600),
    (&[56, 58, 60, 62, 64], &[65, -780, 1638, 2292, -191], 129024),
    (&[55, 57, 59, 61, 63, 65], &[-23, 1035, -4830, 4830, 10485, -233], 645120),
    (&[56, 58, 60, 62, 64], &[-5, 60, -126, 60, 251], 18432),
    (&[55, 57, 59, 61, 63, 65], &[1, -45, 210, -210, 45, 511], 46080),
    // |α| = 9
    (&[66, 68, 70, 72, 74, 76], &[93, 5, -30, 42, -15, 1], 10240),
    (&[67, 69, 71, 73, 75, 77], &[1013, 165, -462, 330, -55, 1], 92160),
    (&[66, 68, 70, 72, 74, 76], &[-11, 605, 210, -294, 105, -7], 46080),
    (&[67, 69, 71, 73, 75, 77], &[-53, 795, 462, -330, 55, -1], 53760),
    (&[66, 68, 70, 72, 74, 76], &[29, -1595, 9570, 8106, -2895, 193], 645120),
    (&[67, 69, 71, 73, 75, 77], &[193, -2895, 8106, 9570, -1595, 29], 645120),
    (&[66, 68, 70, 72, 74, 76], &[-1, 55, -330, 462, 795, -53], 53760),
    (&[67, 69, 71, 73, 75, 77], &[-7, 105, -294, 210, 605, -11], 46080),
    (&[66, 68, 70, 72, 74, 76], &[1, -55, 330, -462, 165, 1013], 92160),
    (&[67, 69, 71, 73, 75, 77], &[1, -15, 42, -30, 5, 93], 10240),
    // |α| = 10
    (&[78, 80, 82, 84, 86, 88, 90], &[2047, 66, -495, 924, -495, 66, -1], 270336),
    (&[79, 81, 83, 85, 87, 89], &[509, 55, -198, 198, -55, 3], 56320),
    (&[78, 80, 82, 84, 86, 88, 90], &[-1981, 130746, 33165, -61908, 33165, -4422, 67], 12165120),
    (&[79, 81, 83, 85, 87, 89], &[-681, 12485, 5742, -5742, 1595, -87], 1013760),
    (&[78, 80, 82, 84, 86, 88, 90], &[743, -49038, 367785, 259644, -139095, 18546, -281], 28385280),
    (&[79, 81, 83, 85, 87, 89], &[3, -55, 198, 198, -55, 3], 16632),
    (&[78, 80, 82, 84, 86, 88, 90], &[-281, 18546, -139095, 259644, 367785, -49038, 743], 28385280),
    (&[79, 81, 83, 85, 87, 89], &[-87, 1595, -5742, 5742, 12485, -681], 1013760),
    (&[78, 80, 82, 84, 86, 88, 90], &[67, -4422, 33165, -61908, 33165, 130746, -1981], 12165120),
    (&[79, 81, 83, 85, 87, 89], &[3, -55, 198, -198, 55, 509], 56320),
    (&[78, 80, 82, 84, 86, 88, 90], &[-1, 66, -495, 924, -495, 66, 2047], 270336),
];

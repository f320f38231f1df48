//! Hard-coded stretches of `<0; 1, ..., N>` that the predictor emits verbatim.

use num_bigint::BigInt;

/// `Q(N + k)` for `k = 1..=34`, as `(coefficient of N, constant)`.
pub const OPENING: [(i64, i64); 34] = [
    (0, 3),
    (1, 1),
    (1, 2),
    (0, 5),
    (1, 3),
    (0, 6),
    (0, 7),
    (1, 4),
    (1, 6),
    (0, 10),
    (0, 8),
    (1, 6),
    (1, 10),
    (0, 12),
    (1, 7),
    (0, 14),
    (1, 12),
    (0, 11),
    (1, 11),
    (1, 15),
    (0, 16),
    (0, 13),
    (0, 17),
    (0, 15),
    (1, 14),
    (0, 20),
    (0, 20),
    (2, 8),
    (1, 6),
    (0, 24),
    (0, 32),
    (2, 4),
    (0, 3),
    (0, 32),
];

/// One of the closing terms of a class-0 sequence:
/// `Q(A_j + offset) = d * D + a * A_j + b * B_j + c`, where
/// `D = A_j * (A_j - A_{j-1} - 2) / 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailEntry {
    pub offset: usize,
    pub d: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl TailEntry {
    const fn new(offset: usize, d: i64, a: i64, b: i64, c: i64) -> Self {
        TailEntry { offset, d, a, b, c }
    }

    pub fn value(&self, d: &BigInt, a: &BigInt, b: &BigInt) -> BigInt {
        d * self.d + a * self.a + b * self.b + self.c
    }
}

/// Offsets 3 through 160; the last entry is the terminating zero.
pub const CLASS0_TAIL: [TailEntry; 158] = [
    TailEntry::new(3, 0, 0, 0, 6),
    TailEntry::new(4, 0, 0, 0, 7),
    TailEntry::new(5, 0, 0, 0, 8),
    TailEntry::new(6, 0, 0, 0, 8),
    TailEntry::new(7, 0, 0, 0, 10),
    TailEntry::new(8, 1, 0, 1, 3),
    TailEntry::new(9, 0, 0, 0, 5),
    TailEntry::new(10, 0, 0, 0, 8),
    TailEntry::new(11, 0, 0, 0, 14),
    TailEntry::new(12, 0, 0, 0, 10),
    TailEntry::new(13, 0, 0, 0, 11),
    TailEntry::new(14, 0, 0, 0, 13),
    TailEntry::new(15, 0, 1, 0, 7),
    TailEntry::new(16, 0, 0, 0, 15),
    TailEntry::new(17, 0, 1, 0, 10),
    TailEntry::new(18, 0, 0, 0, 14),
    TailEntry::new(19, 0, 0, 0, 17),
    TailEntry::new(20, 0, 0, 0, 14),
    TailEntry::new(21, 0, 0, 0, 17),
    TailEntry::new(22, 1, 0, 1, 11),
    TailEntry::new(23, 0, 0, 0, 8),
    TailEntry::new(24, 0, 0, 0, 15),
    TailEntry::new(25, 0, 1, 0, 18),
    TailEntry::new(26, 0, 0, 0, 22),
    TailEntry::new(27, 0, 0, 0, 17),
    TailEntry::new(28, 0, 0, 0, 22),
    TailEntry::new(29, 0, 0, 0, 20),
    TailEntry::new(30, 1, 0, 1, 11),
    TailEntry::new(31, 0, 0, 0, 14),
    TailEntry::new(32, 0, 0, 0, 14),
    TailEntry::new(33, 0, 0, 0, 34),
    TailEntry::new(34, 1, 0, 1, 14),
    TailEntry::new(35, 0, 0, 0, 5),
    TailEntry::new(36, 0, 0, 0, 14),
    TailEntry::new(37, 0, 0, 0, 22),
    TailEntry::new(38, 0, 0, 0, 30),
    TailEntry::new(39, 0, 1, 0, 15),
    TailEntry::new(40, 0, 0, 0, 33),
    TailEntry::new(41, 1, 0, 1, 29),
    TailEntry::new(42, 0, 0, 0, 5),
    TailEntry::new(43, 0, 0, 0, 30),
    TailEntry::new(44, 0, 1, 0, 28),
    TailEntry::new(45, 0, 1, 0, 24),
    TailEntry::new(46, 0, 0, 0, 40),
    TailEntry::new(47, 0, 0, 0, 33),
    TailEntry::new(48, 1, 1, 1, 10),
    TailEntry::new(49, 0, 0, 0, 15),
    TailEntry::new(50, 0, 0, 0, 5),
    TailEntry::new(51, 0, 0, 0, 54),
    TailEntry::new(52, 0, 0, 0, 36),
    TailEntry::new(53, 0, 1, 0, 15),
    TailEntry::new(54, 0, 0, 0, 53),
    TailEntry::new(55, 0, 1, 0, 40),
    TailEntry::new(56, 0, 0, 0, 22),
    TailEntry::new(57, 0, 0, 0, 22),
    TailEntry::new(58, 0, 0, 0, 28),
    TailEntry::new(59, 0, 0, 0, 36),
    TailEntry::new(60, 0, 0, 0, 29),
    TailEntry::new(61, 0, 1, 0, 32),
    TailEntry::new(62, 0, 0, 0, 64),
    TailEntry::new(63, 0, 0, 0, 36),
    TailEntry::new(64, 1, 0, 1, 22),
    TailEntry::new(65, 0, 0, 0, 20),
    TailEntry::new(66, 0, 0, 0, 40),
    TailEntry::new(67, 0, 0, 0, 50),
    TailEntry::new(68, 0, 0, 0, 36),
    TailEntry::new(69, 0, 0, 0, 51),
    TailEntry::new(70, 1, 0, 1, 31),
    TailEntry::new(71, 0, 0, 0, 14),
    TailEntry::new(72, 0, 0, 0, 28),
    TailEntry::new(73, 0, 1, 0, 60),
    TailEntry::new(74, 0, 0, 0, 54),
    TailEntry::new(75, 0, 0, 0, 32),
    TailEntry::new(76, 1, 1, 1, 39),
    TailEntry::new(77, 0, 1, 0, 24),
    TailEntry::new(78, 0, 0, 0, 54),
    TailEntry::new(79, 0, 1, 0, 73),
    TailEntry::new(80, 0, 0, 0, 29),
    TailEntry::new(81, 0, 0, 0, 44),
    TailEntry::new(82, 0, 1, 0, 45),
    TailEntry::new(83, 0, 1, 0, 53),
    TailEntry::new(84, 0, 0, 0, 70),
    TailEntry::new(85, 0, 1, 0, 39),
    TailEntry::new(86, 0, 0, 0, 62),
    TailEntry::new(87, 0, 1, 0, 66),
    TailEntry::new(88, 0, 0, 0, 44),
    TailEntry::new(89, 0, 1, 0, 47),
    TailEntry::new(90, 0, 0, 0, 83),
    TailEntry::new(91, 1, 0, 1, 47),
    TailEntry::new(92, 0, 0, 0, 5),
    TailEntry::new(93, 0, 0, 0, 44),
    TailEntry::new(94, 0, 1, 0, 52),
    TailEntry::new(95, 0, 0, 0, 97),
    TailEntry::new(96, 0, 0, 0, 49),
    TailEntry::new(97, 2, 1, 2, 10),
    TailEntry::new(98, 0, 0, 0, 15),
    TailEntry::new(99, 0, 0, 0, 70),
    TailEntry::new(100, 1, 1, 1, 50),
    TailEntry::new(101, 0, 0, 0, 14),
    TailEntry::new(102, 0, 0, 0, 44),
    TailEntry::new(103, 0, 1, 0, 83),
    TailEntry::new(104, 0, 0, 0, 50),
    TailEntry::new(105, 0, 1, 0, 62),
    TailEntry::new(106, 0, 0, 0, 66),
    TailEntry::new(107, 1, 0, 1, 74),
    TailEntry::new(108, 0, 0, 0, 5),
    TailEntry::new(109, 0, 0, 0, 50),
    TailEntry::new(110, 0, 1, 0, 91),
    TailEntry::new(111, 0, 1, 0, 52),
    TailEntry::new(112, 0, 0, 0, 81),
    TailEntry::new(113, 0, 0, 0, 75),
    TailEntry::new(114, 0, 1, 0, 49),
    TailEntry::new(115, 0, 0, 0, 99),
    TailEntry::new(116, 0, 1, 0, 77),
    TailEntry::new(117, 0, 0, 0, 54),
    TailEntry::new(118, 1, 0, 1, 63),
    TailEntry::new(119, 0, 0, 0, 20),
    TailEntry::new(120, 1, 1, 1, 50),
    TailEntry::new(121, 0, 0, 0, 14),
    TailEntry::new(122, 0, 0, 0, 5),
    TailEntry::new(123, 1, 0, 1, 113),
    TailEntry::new(124, 0, 0, 0, 20),
    TailEntry::new(125, 0, 1, 0, 62),
    TailEntry::new(126, 0, 0, 0, 130),
    TailEntry::new(127, 0, 1, 0, 65),
    TailEntry::new(128, 0, 0, 0, 66),
    TailEntry::new(129, 0, 0, 0, 100),
    TailEntry::new(130, 2, 0, 2, 33),
    TailEntry::new(131, 0, 0, 0, 14),
    TailEntry::new(132, 1, 0, 1, 63),
    TailEntry::new(133, 0, 0, 0, 20),
    TailEntry::new(134, 0, 1, 0, 49),
    TailEntry::new(135, 0, 0, 0, 185),
    TailEntry::new(136, 0, 0, 0, 92),
    TailEntry::new(137, 0, 2, 0, 24),
    TailEntry::new(138, 0, 0, 0, 40),
    TailEntry::new(139, 0, 0, 0, 70),
    TailEntry::new(140, 2, 1, 2, 81),
    TailEntry::new(141, 0, 0, 0, 14),
    TailEntry::new(142, 0, 0, 0, 66),
    TailEntry::new(143, 0, 1, 0, 124),
    TailEntry::new(144, 0, 0, 0, 74),
    TailEntry::new(145, 0, 0, 0, 35),
    TailEntry::new(146, 0, 1, 0, 80),
    TailEntry::new(147, 0, 0, 0, 148),
    TailEntry::new(148, 1, 0, 1, 68),
    TailEntry::new(149, 0, 0, 0, 5),
    TailEntry::new(150, 0, 0, 0, 35),
    TailEntry::new(151, 0, 2, 0, 157),
    TailEntry::new(152, 0, 0, 0, 54),
    TailEntry::new(153, 0, 0, 0, 70),
    TailEntry::new(154, 1, 1, 1, 120),
    TailEntry::new(155, 0, 1, 0, 39),
    TailEntry::new(156, 0, 0, 0, 117),
    TailEntry::new(157, 0, 0, 0, 151),
    TailEntry::new(158, 1, 0, 1, 39),
    TailEntry::new(159, 1, 0, 1, 3),
    TailEntry::new(160, 0, 0, 0, 0),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_are_contiguous() {
        for (i, e) in CLASS0_TAIL.iter().enumerate() {
            assert_eq!(e.offset, i + 3);
        }
        let last = CLASS0_TAIL[157];
        assert_eq!((last.d, last.a, last.b, last.c), (0, 0, 0, 0));
    }

    #[test]
    fn opening_matches_first_identity_terms() {
        assert_eq!(OPENING[0], (0, 3));
        assert_eq!(OPENING[27], (2, 8));
        assert_eq!(OPENING[31], (2, 4));
    }
}

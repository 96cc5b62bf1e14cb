//! Embedded orthogonal array OA(144,7,12,2), index 1.
//!
//! Equivalent to 5 mutually orthogonal Latin squares of order 12, obtained
//! by developing a (12,6;1) difference matrix over the group Z2 x Z6 and
//! appending the column-index factor. Twelve is not a prime power, so no
//! Galois-field construction reaches 7 factors; this table is shipped as
//! constant data and is validated by strength verification in the test
//! suite and the acceptance suite.

pub const FLAGSHIP_OA_144_7_12: [[u8; 7]; 144] = [
    [0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1, 0],
    [2, 2, 2, 2, 2, 2, 0],
    [3, 3, 3, 3, 3, 3, 0],
    [4, 4, 4, 4, 4, 4, 0],
    [5, 5, 5, 5, 5, 5, 0],
    [6, 6, 6, 6, 6, 6, 0],
    [7, 7, 7, 7, 7, 7, 0],
    [8, 8, 8, 8, 8, 8, 0],
    [9, 9, 9, 9, 9, 9, 0],
    [10, 10, 10, 10, 10, 10, 0],
    [11, 11, 11, 11, 11, 11, 0],
    [0, 1, 4, 6, 11, 2, 1],
    [1, 2, 5, 7, 6, 3, 1],
    [2, 3, 0, 8, 7, 4, 1],
    [3, 4, 1, 9, 8, 5, 1],
    [4, 5, 2, 10, 9, 0, 1],
    [5, 0, 3, 11, 10, 1, 1],
    [6, 7, 10, 0, 5, 8, 1],
    [7, 8, 11, 1, 0, 9, 1],
    [8, 9, 6, 2, 1, 10, 1],
    [9, 10, 7, 3, 2, 11, 1],
    [10, 11, 8, 4, 3, 6, 1],
    [11, 6, 9, 5, 4, 7, 1],
    [0, 2, 9, 4, 10, 8, 2],
    [1, 3, 10, 5, 11, 9, 2],
    [2, 4, 11, 0, 6, 10, 2],
    [3, 5, 6, 1, 7, 11, 2],
    [4, 0, 7, 2, 8, 6, 2],
    [5, 1, 8, 3, 9, 7, 2],
    [6, 8, 3, 10, 4, 2, 2],
    [7, 9, 4, 11, 5, 3, 2],
    [8, 10, 5, 6, 0, 4, 2],
    [9, 11, 0, 7, 1, 5, 2],
    [10, 6, 1, 8, 2, 0, 2],
    [11, 7, 2, 9, 3, 1, 2],
    [0, 3, 1, 2, 5, 11, 3],
    [1, 4, 2, 3, 0, 6, 3],
    [2, 5, 3, 4, 1, 7, 3],
    [3, 0, 4, 5, 2, 8, 3],
    [4, 1, 5, 0, 3, 9, 3],
    [5, 2, 0, 1, 4, 10, 3],
    [6, 9, 7, 8, 11, 5, 3],
    [7, 10, 8, 9, 6, 0, 3],
    [8, 11, 9, 10, 7, 1, 3],
    [9, 6, 10, 11, 8, 2, 3],
    [10, 7, 11, 6, 9, 3, 3],
    [11, 8, 6, 7, 10, 4, 3],
    [0, 4, 10, 7, 9, 1, 4],
    [1, 5, 11, 8, 10, 2, 4],
    [2, 0, 6, 9, 11, 3, 4],
    [3, 1, 7, 10, 6, 4, 4],
    [4, 2, 8, 11, 7, 5, 4],
    [5, 3, 9, 6, 8, 0, 4],
    [6, 10, 4, 1, 3, 7, 4],
    [7, 11, 5, 2, 4, 8, 4],
    [8, 6, 0, 3, 5, 9, 4],
    [9, 7, 1, 4, 0, 10, 4],
    [10, 8, 2, 5, 1, 11, 4],
    [11, 9, 3, 0, 2, 6, 4],
    [0, 5, 7, 11, 3, 10, 5],
    [1, 0, 8, 6, 4, 11, 5],
    [2, 1, 9, 7, 5, 6, 5],
    [3, 2, 10, 8, 0, 7, 5],
    [4, 3, 11, 9, 1, 8, 5],
    [5, 4, 6, 10, 2, 9, 5],
    [6, 11, 1, 5, 9, 4, 5],
    [7, 6, 2, 0, 10, 5, 5],
    [8, 7, 3, 1, 11, 0, 5],
    [9, 8, 4, 2, 6, 1, 5],
    [10, 9, 5, 3, 7, 2, 5],
    [11, 10, 0, 4, 8, 3, 5],
    [0, 6, 8, 10, 1, 3, 6],
    [1, 7, 9, 11, 2, 4, 6],
    [2, 8, 10, 6, 3, 5, 6],
    [3, 9, 11, 7, 4, 0, 6],
    [4, 10, 6, 8, 5, 1, 6],
    [5, 11, 7, 9, 0, 2, 6],
    [6, 0, 2, 4, 7, 9, 6],
    [7, 1, 3, 5, 8, 10, 6],
    [8, 2, 4, 0, 9, 11, 6],
    [9, 3, 5, 1, 10, 6, 6],
    [10, 4, 0, 2, 11, 7, 6],
    [11, 5, 1, 3, 6, 8, 6],
    [0, 7, 6, 3, 4, 5, 7],
    [1, 8, 7, 4, 5, 0, 7],
    [2, 9, 8, 5, 0, 1, 7],
    [3, 10, 9, 0, 1, 2, 7],
    [4, 11, 10, 1, 2, 3, 7],
    [5, 6, 11, 2, 3, 4, 7],
    [6, 1, 0, 9, 10, 11, 7],
    [7, 2, 1, 10, 11, 6, 7],
    [8, 3, 2, 11, 6, 7, 7],
    [9, 4, 3, 6, 7, 8, 7],
    [10, 5, 4, 7, 8, 9, 7],
    [11, 0, 5, 8, 9, 10, 7],
    [0, 8, 5, 9, 2, 7, 8],
    [1, 9, 0, 10, 3, 8, 8],
    [2, 10, 1, 11, 4, 9, 8],
    [3, 11, 2, 6, 5, 10, 8],
    [4, 6, 3, 7, 0, 11, 8],
    [5, 7, 4, 8, 1, 6, 8],
    [6, 2, 11, 3, 8, 1, 8],
    [7, 3, 6, 4, 9, 2, 8],
    [8, 4, 7, 5, 10, 3, 8],
    [9, 5, 8, 0, 11, 4, 8],
    [10, 0, 9, 1, 6, 5, 8],
    [11, 1, 10, 2, 7, 0, 8],
    [0, 9, 2, 1, 8, 4, 9],
    [1, 10, 3, 2, 9, 5, 9],
    [2, 11, 4, 3, 10, 0, 9],
    [3, 6, 5, 4, 11, 1, 9],
    [4, 7, 0, 5, 6, 2, 9],
    [5, 8, 1, 0, 7, 3, 9],
    [6, 3, 8, 7, 2, 10, 9],
    [7, 4, 9, 8, 3, 11, 9],
    [8, 5, 10, 9, 4, 6, 9],
    [9, 0, 11, 10, 5, 7, 9],
    [10, 1, 6, 11, 0, 8, 9],
    [11, 2, 7, 6, 1, 9, 9],
    [0, 10, 11, 5, 7, 6, 10],
    [1, 11, 6, 0, 8, 7, 10],
    [2, 6, 7, 1, 9, 8, 10],
    [3, 7, 8, 2, 10, 9, 10],
    [4, 8, 9, 3, 11, 10, 10],
    [5, 9, 10, 4, 6, 11, 10],
    [6, 4, 5, 11, 1, 0, 10],
    [7, 5, 0, 6, 2, 1, 10],
    [8, 0, 1, 7, 3, 2, 10],
    [9, 1, 2, 8, 4, 3, 10],
    [10, 2, 3, 9, 5, 4, 10],
    [11, 3, 4, 10, 0, 5, 10],
    [0, 11, 3, 8, 6, 9, 11],
    [1, 6, 4, 9, 7, 10, 11],
    [2, 7, 5, 10, 8, 11, 11],
    [3, 8, 0, 11, 9, 6, 11],
    [4, 9, 1, 6, 10, 7, 11],
    [5, 10, 2, 7, 11, 8, 11],
    [6, 5, 9, 2, 0, 3, 11],
    [7, 0, 10, 3, 1, 4, 11],
    [8, 1, 11, 4, 2, 5, 11],
    [9, 2, 6, 5, 3, 0, 11],
    [10, 3, 7, 0, 4, 1, 11],
    [11, 4, 8, 1, 5, 2, 11],
];

//! Vertex/edge tables of the five platonic solids and the Petersen graph.

pub const TETRAHEDRON: &[(usize, usize)] = &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub const OCTAHEDRON: &[(usize, usize)] = &[
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
];

// Vertices are 3-bit strings; edges flip one bit.
pub const CUBE: &[(usize, usize)] = &[
    (0, 1),
    (0, 2),
    (0, 4),
    (1, 3),
    (1, 5),
    (2, 3),
    (2, 6),
    (3, 7),
    (4, 5),
    (4, 6),
    (5, 7),
    (6, 7),
];

// Apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub const ICOSAHEDRON: &[(usize, usize)] = &[
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (1, 5),
    (1, 6),
    (1, 7),
    (2, 7),
    (2, 8),
    (3, 8),
    (3, 9),
    (4, 9),
    (4, 10),
    (5, 10),
    (5, 6),
    (6, 7),
    (7, 8),
    (8, 9),
    (9, 10),
    (6, 10),
    (6, 11),
    (7, 11),
    (8, 11),
    (9, 11),
    (10, 11),
];

// Generalized Petersen graph GP(10, 2): outer 10-cycle, spokes, two inner pentagons.
pub const DODECAHEDRON: &[(usize, usize)] = &[
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 8),
    (8, 9),
    (0, 9),
    (0, 10),
    (1, 11),
    (2, 12),
    (3, 13),
    (4, 14),
    (5, 15),
    (6, 16),
    (7, 17),
    (8, 18),
    (9, 19),
    (10, 12),
    (11, 13),
    (12, 14),
    (13, 15),
    (14, 16),
    (15, 17),
    (16, 18),
    (17, 19),
    (10, 18),
    (11, 19),
];

// GP(5, 2).
pub const PETERSEN: &[(usize, usize)] = &[
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (0, 4),
    (0, 5),
    (1, 6),
    (2, 7),
    (3, 8),
    (4, 9),
    (5, 7),
    (6, 8),
    (7, 9),
    (5, 8),
    (6, 9),
];

/// Edge table of the platonic solid with `vertices` vertices.
pub fn table(vertices: usize) -> Option<&'static [(usize, usize)]> {
    match vertices {
        4 => Some(TETRAHEDRON),
        6 => Some(OCTAHEDRON),
        8 => Some(CUBE),
        12 => Some(ICOSAHEDRON),
        20 => Some(DODECAHEDRON),
        _ => None,
    }
}

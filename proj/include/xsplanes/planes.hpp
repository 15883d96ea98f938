// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xsplanes/point.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace xsplanes {

/// z = sign_x * m * x + sign_y * y (mod 1).
struct Plane {
    std::uint64_t m = 1;
    int sign_x = 1;
    int sign_y = 1;

    friend bool operator==(const Plane&, const Plane&) = default;
};

/// The eight planes +-(2^a+1) x +- y and +-(2^a-1) x +- y, in the fixed
/// order m ascending, then sign_x, then sign_y, with + before -.
struct PlaneFamily {
    int a = 23;
    std::array<Plane, 8> planes{};
};

/// Throws std::out_of_range unless 1 <= a <= 62.
PlaneFamily family(int a);

/// frac(m * x) for x >= 0, accurate to a few ulps even when m * x is far
/// beyond 2^53.
double frac_mul(std::uint64_t m, double x);

/// Vertical distance on the torus: with t = z - (sx m x + sy y),
/// min(frac(t), 1 - frac(t)). In [0, 1/2].
double torus_dist(const Point3& p, const Plane& plane);

struct Nearest {
    double dist = 0.5;
    std::size_t index = 0;
    Plane which{};
};

/// Arg-min over the family; ties go to the earlier plane in family order.
Nearest min_dist(const Point3& p, const PlaneFamily& fam);

struct MeshGrid {
    std::size_t columns = 32;
    std::size_t rows = 129;
};

/// A run of vertices along y in one grid column with no mod-1 wrap inside.
struct MeshStrip {
    std::size_t column = 0;
    std::size_t first_row = 0;
    std::vector<Point3> vertices;
};

struct Mesh {
    Plane plane{};
    MeshGrid grid{};
    std::vector<MeshStrip> strips;

    std::size_t vertex_count() const;
};

/// Samples z = frac(sx m x + sy y) over the slab. Columns sit at cell centres
/// x_i = (i + 1/2) x_max / columns; rows cover y in [0, 1] inclusive. Strips
/// break wherever z wraps. Vertices are emitted as (magnify x, y, z).
/// Throws std::invalid_argument on an empty grid (columns < 1 or rows < 2),
/// x_max outside (0, 1] or magnify <= 0.
Mesh mesh(const Plane& plane, double x_max, double magnify, MeshGrid grid = {});

/// Connected pieces of a mesh: strips in neighbouring columns are joined when
/// they share a row without a wrap between them.
std::size_t connected_components(const Mesh& mesh);

/// "(8388609,+,-)"
std::string plane_label(const Plane& plane);
/// "plane_8388609_p_m"
std::string plane_file_stem(const Plane& plane);

} // namespace xsplanes

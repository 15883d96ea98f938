// SPDX-License-Identifier: Apache-2.0
#include "xsplanes/planes.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace xsplanes {

namespace {

double frac(double v) {
    double f = v - std::floor(v);
    // v slightly below an integer can round up to exactly 1.
    if (f >= 1.0) {
        f = 0.0;
    }
    return f;
}

// frac(c * x) for c exactly representable: the product's rounding error is
// recovered with an fma, and frac of a double is exact.
double frac_mul_exact(double c, double x) {
    const double p = c * x;
    const double err = std::fma(c, x, -p);
    return frac(frac(p) + err);
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

PlaneFamily family(int a) {
    if (a < 1 || a > 62) {
        throw std::out_of_range("plane family shift out of range [1,62]: " + std::to_string(a));
    }
    PlaneFamily fam;
    fam.a = a;
    const std::uint64_t p = std::uint64_t{1} << a;
    std::size_t i = 0;
    for (std::uint64_t m : {p - 1, p + 1}) {
        for (int sx : {1, -1}) {
            for (int sy : {1, -1}) {
                fam.planes[i++] = Plane{m, sx, sy};
            }
        }
    }
    return fam;
}

double frac_mul(std::uint64_t m, double x) {
    // High part has at most 53 significant bits, low part at most 11.
    const std::uint64_t hi = m & ~std::uint64_t{0x7FF};
    const std::uint64_t lo = m & std::uint64_t{0x7FF};
    return frac(frac_mul_exact(static_cast<double>(hi), x) +
                frac_mul_exact(static_cast<double>(lo), x));
}

double torus_dist(const Point3& p, const Plane& plane) {
    const double t = p.z - plane.sign_x * frac_mul(plane.m, p.x) - plane.sign_y * p.y;
    const double f = frac(t);
    return std::min(f, 1.0 - f);
}

Nearest min_dist(const Point3& p, const PlaneFamily& fam) {
    Nearest best;
    best.dist = 1.0;
    for (std::size_t i = 0; i < fam.planes.size(); ++i) {
        const double d = torus_dist(p, fam.planes[i]);
        if (d < best.dist) {
            best = Nearest{d, i, fam.planes[i]};
        }
    }
    return best;
}

std::size_t Mesh::vertex_count() const {
    std::size_t n = 0;
    for (const auto& s : strips) {
        n += s.vertices.size();
    }
    return n;
}

Mesh mesh(const Plane& plane, double x_max, double magnify, MeshGrid grid) {
    if (grid.columns < 1 || grid.rows < 2) {
        throw std::invalid_argument("mesh grid needs at least 1 column and 2 rows");
    }
    if (!(x_max > 0.0 && x_max <= 1.0)) {
        throw std::invalid_argument("mesh x_max must be in (0, 1]");
    }
    if (!(magnify > 0.0)) {
        throw std::invalid_argument("mesh magnification must be positive");
    }
    Mesh out;
    out.plane = plane;
    out.grid = grid;
    const double dx = x_max / static_cast<double>(grid.columns);
    const double dy = 1.0 / static_cast<double>(grid.rows - 1);
    for (std::size_t i = 0; i < grid.columns; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * dx;
        const double mx = plane.sign_x * frac_mul(plane.m, x);
        MeshStrip strip{i, 0, {}};
        double prev_z = 0.0;
        for (std::size_t j = 0; j < grid.rows; ++j) {
            const double y = j + 1 == grid.rows ? 1.0 : static_cast<double>(j) * dy;
            const double z = frac(mx + plane.sign_y * y);
            if (j > 0 && std::abs(z - prev_z) > 0.5) {
                out.strips.push_back(std::move(strip));
                strip = MeshStrip{i, j, {}};
            }
            strip.vertices.push_back(Point3{magnify * x, y, z});
            prev_z = z;
        }
        out.strips.push_back(std::move(strip));
    }
    return out;
}

std::size_t connected_components(const Mesh& m) {
    const auto& strips = m.strips;
    DisjointSets sets(strips.size());
    // Strips are emitted column by column, rows ascending within a column.
    std::size_t col_begin = 0;
    while (col_begin < strips.size()) {
        std::size_t col_end = col_begin;
        while (col_end < strips.size() && strips[col_end].column == strips[col_begin].column) {
            ++col_end;
        }
        std::size_t next_end = col_end;
        while (next_end < strips.size() && strips[next_end].column == strips[col_begin].column + 1) {
            ++next_end;
        }
        for (std::size_t i = col_begin; i < col_end; ++i) {
            const auto& a = strips[i];
            for (std::size_t j = col_end; j < next_end; ++j) {
                const auto& b = strips[j];
                const std::size_t lo = std::max(a.first_row, b.first_row);
                const std::size_t hi = std::min(a.first_row + a.vertices.size(),
                                                b.first_row + b.vertices.size());
                for (std::size_t r = lo; r < hi; ++r) {
                    if (std::abs(a.vertices[r - a.first_row].z - b.vertices[r - b.first_row].z) < 0.5) {
                        sets.unite(i, j);
                        break;
                    }
                }
            }
        }
        col_begin = col_end;
    }
    std::size_t roots = 0;
    for (std::size_t i = 0; i < strips.size(); ++i) {
        roots += sets.find(i) == i;
    }
    return roots;
}

std::string plane_label(const Plane& plane) {
    return "(" + std::to_string(plane.m) + "," + (plane.sign_x > 0 ? "+" : "-") + "," +
           (plane.sign_y > 0 ? "+" : "-") + ")";
}

std::string plane_file_stem(const Plane& plane) {
    return "plane_" + std::to_string(plane.m) + "_" + (plane.sign_x > 0 ? "p" : "m") + "_" +
           (plane.sign_y > 0 ? "p" : "m");
}

} // namespace xsplanes

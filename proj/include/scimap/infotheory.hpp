// Entropy and three-way mutual information over small joint distributions,
// plus the estimator that turns occurrence-matrix column groups into a joint
// indicator distribution. Values are reported in millibits; negative mu
// flags XOR-like configurational dependence among the groups.
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "scimap/common.hpp"
#include "scimap/matrix.hpp"

namespace scimap {

namespace detail {

inline void require_probabilities(const std::vector<double>& p) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw Error("probabilities must be non-negative, got " + format_general(v));
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw Error("probabilities must sum to 1, got " + format_general(sum));
}

}  // namespace detail

// Shannon entropy in bits; zero cells contribute nothing.
inline double entropy_bits(const std::vector<double>& p) {
    detail::require_probabilities(p);
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

// Joint distribution of three discrete variables, flat row-major layout:
// p[(x * size_y + y) * size_z + z].
struct JointDistribution3 {
    std::size_t size_x = 0;
    std::size_t size_y = 0;
    std::size_t size_z = 0;
    std::vector<double> p;

    double at(std::size_t x, std::size_t y, std::size_t z) const {
        return p[(x * size_y + y) * size_z + z];
    }

    void validate() const {
        if (size_x == 0 || size_y == 0 || size_z == 0)
            throw Error("joint distribution axes must be non-empty");
        if (p.size() != size_x * size_y * size_z)
            throw Error("joint distribution has " + std::to_string(p.size()) + " cells, expected " +
                        std::to_string(size_x * size_y * size_z));
        detail::require_probabilities(p);
    }
};

// Three-way mutual information
//   mu = H(X)+H(Y)+H(Z) - H(XY)-H(XZ)-H(YZ) + H(XYZ)
// in millibits (1 bit = 1000 mbits). Zero for mutually independent
// variables, +1000 for a triplicated uniform bit, -1000 for the XOR triple.
inline double mutual_information_3(const JointDistribution3& joint) {
    joint.validate();
    const std::size_t nx = joint.size_x, ny = joint.size_y, nz = joint.size_z;
    std::vector<double> px(nx, 0.0), py(ny, 0.0), pz(nz, 0.0);
    std::vector<double> pxy(nx * ny, 0.0), pxz(nx * nz, 0.0), pyz(ny * nz, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t z = 0; z < nz; ++z) {
                const double v = joint.at(x, y, z);
                px[x] += v;
                py[y] += v;
                pz[z] += v;
                pxy[x * ny + y] += v;
                pxz[x * nz + z] += v;
                pyz[y * nz + z] += v;
            }

    auto h = [](const std::vector<double>& p) {
        double out = 0.0;
        for (double v : p)
            if (v > 0.0) out -= v * std::log2(v);
        return out;
    };
    double hxyz = 0.0;
    for (double v : joint.p)
        if (v > 0.0) hxyz -= v * std::log2(v);

    const double mu_bits = h(px) + h(py) + h(pz) - h(pxy) - h(pxz) - h(pyz) + hxyz;
    return 1000.0 * mu_bits;
}

// Empirical joint distribution of three disjoint column groups of an
// occurrence matrix: each document (row) contributes one observation of the
// binary indicators "any column of the group is nonzero for this document".
// Maximum-likelihood frequencies, no smoothing.
inline JointDistribution3 group_distribution(const LabeledMatrix& mat,
                                             const std::array<std::vector<std::size_t>, 3>& groups) {
    const std::size_t rows = mat.row_labels.size();
    const std::size_t cols = mat.col_labels.size();
    if (rows == 0) throw Error("group distribution needs at least one document");

    std::vector<int> owner(cols, -1);
    for (std::size_t g = 0; g < 3; ++g) {
        if (groups[g].empty()) throw Error("group " + std::to_string(g + 1) + " is empty");
        for (std::size_t c : groups[g]) {
            if (c >= cols)
                throw Error("group " + std::to_string(g + 1) + " references column " +
                            std::to_string(c) + ", matrix has " + std::to_string(cols));
            if (owner[c] >= 0)
                throw Error("column '" + mat.col_labels[c] + "' appears in groups " +
                            std::to_string(owner[c] + 1) + " and " + std::to_string(g + 1));
            owner[c] = static_cast<int>(g);
        }
    }

    JointDistribution3 joint;
    joint.size_x = joint.size_y = joint.size_z = 2;
    joint.p.assign(8, 0.0);
    const double unit = 1.0 / static_cast<double>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t bit[3] = {0, 0, 0};
        for (std::size_t g = 0; g < 3; ++g)
            for (std::size_t c : groups[g])
                if (mat.at(r, c) != 0.0) {
                    bit[g] = 1;
                    break;
                }
        joint.p[(bit[0] * 2 + bit[1]) * 2 + bit[2]] += unit;
    }
    return joint;
}

}  // namespace scimap

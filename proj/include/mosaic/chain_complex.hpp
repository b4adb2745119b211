#pragma once

#include <string>
#include <vector>

#include "mosaic/sparse_matrix.hpp"

namespace mosaic::exact {

// Chain complex with basis labels per degree and boundary matrices
// d[k] : C_k -> C_{k-1}  (d[0] maps to the zero space).
struct ChainComplex {
    std::vector<std::vector<std::string>> basis;  // basis[k] = labels in degree k
    std::vector<RationalMatrix> boundary;         // boundary[k] has shape dim(k-1) x dim(k)

    int top_degree() const { return (int)basis.size() - 1; }
    int dim(int k) const {
        return (k < 0 || k >= (int)basis.size()) ? 0 : (int)basis[k].size();
    }

    // d_{k} o d_{k+1} == 0 for all k.
    bool boundary_squares_to_zero() const {
        for (int k = 0; k + 1 < (int)boundary.size(); ++k) {
            if (boundary[k].cols() == 0 || boundary[k + 1].cols() == 0) continue;
            if (!multiply(boundary[k], boundary[k + 1]).is_zero_matrix()) return false;
        }
        return true;
    }

    // Homology ranks H_0 .. H_top over Q.
    std::vector<int> homology_ranks() const {
        std::vector<int> boundary_rank(basis.size() + 1, 0);
        for (int k = 0; k < (int)boundary.size(); ++k)
            boundary_rank[k] = exact::rank(boundary[k]);
        std::vector<int> h(basis.size());
        for (int k = 0; k < (int)basis.size(); ++k) {
            int cycles = dim(k) - boundary_rank[k];
            int boundaries = (k + 1 < (int)boundary_rank.size()) ? boundary_rank[k + 1] : 0;
            h[k] = cycles - boundaries;
        }
        return h;
    }

    std::vector<int> graded_dims() const {
        std::vector<int> out(basis.size());
        for (int k = 0; k < (int)basis.size(); ++k) out[k] = dim(k);
        return out;
    }

    long euler_characteristic() const {
        long chi = 0;
        for (int k = 0; k < (int)basis.size(); ++k)
            chi += (k % 2 == 0) ? dim(k) : -dim(k);
        return chi;
    }
};

}  // namespace mosaic::exact

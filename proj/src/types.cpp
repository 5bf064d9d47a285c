#include "aevt/types.hpp"

#include <stdexcept>

namespace aevt {

RMat inverse(const RMat& m) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("inverse needs a square matrix");
    RMat a = m, inv = RMat::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = c;
        while (piv < n && a(piv, c).is_zero()) ++piv;
        if (piv == n) throw std::domain_error("matrix is singular");
        if (piv != c) {
            a.row(c).swap(a.row(piv));
            inv.row(c).swap(inv.row(piv));
        }
        Rational s = Rational(1) / a(c, c);
        for (Eigen::Index j = 0; j < n; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero()) continue;
            Rational f = a(r, c);
            for (Eigen::Index j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

} // namespace aevt

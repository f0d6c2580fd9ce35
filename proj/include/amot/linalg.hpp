#pragma once

// Small dense exact linear algebra, generic over a field handle (see
// polyops.hpp for the handle shape). Everything here is O(n^3) Gaussian
// elimination; matrices at desk scale stay tiny except kernel matrices,
// which are a few hundred rows at most.

#include <optional>
#include <vector>

#include "amot/common.hpp"

namespace amot {

template <class E>
struct Mat {
    size_t nr = 0, nc = 0;
    std::vector<E> a;

    Mat() = default;
    Mat(size_t r, size_t c, const E& fill) : nr(r), nc(c), a(r * c, fill) {}
    E& at(size_t i, size_t j) { return a[i * nc + j]; }
    const E& at(size_t i, size_t j) const { return a[i * nc + j]; }
};

template <class F>
Mat<typename F::Elem> mat_identity(const F& f, size_t n) {
    Mat<typename F::Elem> m(n, n, f.zero());
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

template <class F>
Mat<typename F::Elem> mat_mul(const F& f, const Mat<typename F::Elem>& A,
                              const Mat<typename F::Elem>& B) {
    if (A.nc != B.nr) throw InternalError("mat_mul: shape mismatch");
    Mat<typename F::Elem> C(A.nr, B.nc, f.zero());
    for (size_t i = 0; i < A.nr; ++i)
        for (size_t k = 0; k < A.nc; ++k) {
            if (f.is_zero(A.at(i, k))) continue;
            for (size_t j = 0; j < B.nc; ++j)
                C.at(i, j) = f.add(C.at(i, j), f.mul(A.at(i, k), B.at(k, j)));
        }
    return C;
}

template <class F>
std::vector<typename F::Elem> mat_vec(const F& f, const Mat<typename F::Elem>& A,
                                      const std::vector<typename F::Elem>& v) {
    if (A.nc != v.size()) throw InternalError("mat_vec: shape mismatch");
    std::vector<typename F::Elem> r(A.nr, f.zero());
    for (size_t i = 0; i < A.nr; ++i)
        for (size_t j = 0; j < A.nc; ++j)
            if (!f.is_zero(A.at(i, j))) r[i] = f.add(r[i], f.mul(A.at(i, j), v[j]));
    return r;
}

// In-place reduced row echelon form; returns pivot column list.
template <class F>
std::vector<size_t> rref(const F& f, Mat<typename F::Elem>& M) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < M.nc && row < M.nr; ++col) {
        size_t sel = row;
        while (sel < M.nr && f.is_zero(M.at(sel, col))) ++sel;
        if (sel == M.nr) continue;
        for (size_t j = 0; j < M.nc; ++j) std::swap(M.at(row, j), M.at(sel, j));
        auto piv = f.inv(M.at(row, col));
        for (size_t j = col; j < M.nc; ++j) M.at(row, j) = f.mul(M.at(row, j), piv);
        for (size_t i = 0; i < M.nr; ++i) {
            if (i == row || f.is_zero(M.at(i, col))) continue;
            auto c = M.at(i, col);
            for (size_t j = col; j < M.nc; ++j)
                M.at(i, j) = f.sub(M.at(i, j), f.mul(c, M.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Basis of the right null space of M (solutions of M x = 0).
template <class F>
std::vector<std::vector<typename F::Elem>> nullspace(const F& f, Mat<typename F::Elem> M) {
    auto pivots = rref(f, M);
    std::vector<bool> is_pivot(M.nc, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<typename F::Elem>> basis;
    for (size_t free = 0; free < M.nc; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::Elem> v(M.nc, f.zero());
        v[free] = f.one();
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = f.neg(M.at(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
size_t mat_rank(const F& f, Mat<typename F::Elem> M) {
    return rref(f, M).size();
}

// One solution of A x = b, if any.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& f, const Mat<typename F::Elem>& A,
                                                   const std::vector<typename F::Elem>& b) {
    if (A.nr != b.size()) throw InternalError("solve: shape mismatch");
    Mat<typename F::Elem> M(A.nr, A.nc + 1, f.zero());
    for (size_t i = 0; i < A.nr; ++i) {
        for (size_t j = 0; j < A.nc; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, A.nc) = b[i];
    }
    auto pivots = rref(f, M);
    std::vector<typename F::Elem> x(A.nc, f.zero());
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == A.nc) return std::nullopt;  // inconsistent row
        x[pivots[r]] = M.at(r, A.nc);
    }
    return x;
}

template <class F>
std::optional<Mat<typename F::Elem>> mat_inverse(const F& f, const Mat<typename F::Elem>& A) {
    if (A.nr != A.nc) throw InternalError("mat_inverse: not square");
    size_t n = A.nr;
    Mat<typename F::Elem> M(n, 2 * n, f.zero());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, n + i) = f.one();
    }
    auto pivots = rref(f, M);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    Mat<typename F::Elem> R(n, n, f.zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) R.at(i, j) = M.at(i, n + j);
    return R;
}

// Characteristic polynomial over a field via Hessenberg reduction, monic,
// low-degree-first coefficients. Valid in any characteristic.
template <class F>
std::vector<typename F::Elem> charpoly(const F& f, Mat<typename F::Elem> H) {
    using E = typename F::Elem;
    if (H.nr != H.nc) throw InternalError("charpoly: not square");
    size_t n = H.nr;
    for (size_t k = 0; k + 2 < n; ++k) {
        size_t piv = k + 1;
        while (piv < n && f.is_zero(H.at(piv, k))) ++piv;
        if (piv == n) continue;
        if (piv != k + 1) {
            for (size_t j = 0; j < n; ++j) std::swap(H.at(k + 1, j), H.at(piv, j));
            for (size_t i = 0; i < n; ++i) std::swap(H.at(i, k + 1), H.at(i, piv));
        }
        auto d = f.inv(H.at(k + 1, k));
        for (size_t i = k + 2; i < n; ++i) {
            if (f.is_zero(H.at(i, k))) continue;
            auto m = f.mul(H.at(i, k), d);
            for (size_t j = 0; j < n; ++j) H.at(i, j) = f.sub(H.at(i, j), f.mul(m, H.at(k + 1, j)));
            for (size_t i2 = 0; i2 < n; ++i2)
                H.at(i2, k + 1) = f.add(H.at(i2, k + 1), f.mul(m, H.at(i2, i)));
        }
    }
    // p_m(x) = (x - h_mm) p_{m-1} - sum_k h_{m-k,m} (prod subdiag) p_{m-k-1}
    std::vector<std::vector<E>> p(n + 1);
    p[0] = {f.one()};
    for (size_t m = 1; m <= n; ++m) {
        const auto& prev = p[m - 1];
        std::vector<E> cur(prev.size() + 1, f.zero());
        for (size_t i = 0; i < prev.size(); ++i) {
            cur[i + 1] = f.add(cur[i + 1], prev[i]);
            cur[i] = f.sub(cur[i], f.mul(H.at(m - 1, m - 1), prev[i]));
        }
        auto run = f.one();
        for (size_t k = 1; k < m; ++k) {
            run = f.mul(run, H.at(m - k, m - k - 1));
            if (f.is_zero(run)) break;
            auto coef = f.mul(H.at(m - k - 1, m - 1), run);
            const auto& pk = p[m - k - 1];
            for (size_t i = 0; i < pk.size(); ++i) cur[i] = f.sub(cur[i], f.mul(coef, pk[i]));
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

}  // namespace amot

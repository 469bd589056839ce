#include "fredholm/qrcp.hpp"

#include <algorithm>
#include <cmath>

#include "fredholm/error.hpp"

namespace fredholm {

namespace {

Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
    Scalar s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += std::conj(x[i]) * y[i];
    return s;
}

// Euclidean MGS with one re-orthogonalization pass; inputs are independent by
// construction, so nothing is dropped.
void orthonormalize_columns(std::vector<std::vector<Scalar>>& cols) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto& v = cols[j];
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < j; ++i) {
                const Scalar s = dot(cols[i], v);
                for (std::size_t k = 0; k < v.size(); ++k)
                    v[k] -= s * cols[i][k];
            }
        const double nrm = euclidean_norm(v);
        for (auto& x : v)
            x /= nrm;
    }
}

} // namespace

PivotedQR::PivotedQR(const Matrix& m, double rank_tol, double scale)
    : rows_(m.rows()), cols_(m.cols()), qr_(m), perm_(m.cols()) {
    for (std::size_t j = 0; j < cols_; ++j)
        perm_[j] = j;

    const std::size_t steps = std::min(rows_, cols_);
    tau_.assign(steps, 0.0);
    diag_.assign(steps, 0.0);

    for (std::size_t k = 0; k < steps; ++k) {
        // pivot on the largest remaining column norm; n is small, so recompute
        // norms instead of downdating them
        std::size_t p = k;
        double best = -1.0;
        for (std::size_t j = k; j < cols_; ++j) {
            const double nrm = euclidean_norm(qr_.col(j).subspan(k));
            if (nrm > best) {
                best = nrm;
                p = j;
            }
        }
        if (p != k) {
            for (std::size_t i = 0; i < rows_; ++i)
                std::swap(qr_(i, k), qr_(i, p));
            std::swap(perm_[k], perm_[p]);
        }

        const double nx = best;
        diag_[k] = nx;
        if (nx == 0.0)
            continue;

        // Hermitian reflector H = I - tau u u^H with u_0 = 1, H x = -phase |x| e_1
        const Scalar x0 = qr_(k, k);
        const Scalar phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Scalar(1.0);
        const Scalar u0 = x0 + phase * nx;
        for (std::size_t i = k + 1; i < rows_; ++i)
            qr_(i, k) /= u0;
        double unorm2 = 1.0;
        for (std::size_t i = k + 1; i < rows_; ++i)
            unorm2 += std::norm(qr_(i, k));
        tau_[k] = 2.0 / unorm2;

        for (std::size_t j = k + 1; j < cols_; ++j) {
            Scalar s = qr_(k, j);
            for (std::size_t i = k + 1; i < rows_; ++i)
                s += std::conj(qr_(i, k)) * qr_(i, j);
            s *= tau_[k];
            qr_(k, j) -= s;
            for (std::size_t i = k + 1; i < rows_; ++i)
                qr_(i, j) -= s * qr_(i, k);
        }
        qr_(k, k) = -phase * nx;
    }

    rank_ = 0;
    if (steps > 0 && diag_[0] > 0.0) {
        const double cutoff = rank_tol * std::max(diag_[0], scale);
        while (rank_ < steps && diag_[rank_] > cutoff)
            ++rank_;
    }
}

std::vector<Scalar> PivotedQR::apply_qh(std::span<const Scalar> b) const {
    if (b.size() != rows_)
        throw DimensionError("pivoted QR: right-hand side length mismatch");
    std::vector<Scalar> y(b.begin(), b.end());
    for (std::size_t k = 0; k < tau_.size(); ++k) {
        if (tau_[k] == Scalar(0.0))
            continue;
        Scalar s = y[k];
        for (std::size_t i = k + 1; i < rows_; ++i)
            s += std::conj(qr_(i, k)) * y[i];
        s *= tau_[k];
        y[k] -= s;
        for (std::size_t i = k + 1; i < rows_; ++i)
            y[i] -= s * qr_(i, k);
    }
    return y;
}

std::vector<Scalar> PivotedQR::basic_solution(std::span<const Scalar> b) const {
    const auto y = apply_qh(b);
    std::vector<Scalar> z(cols_, 0.0);
    for (std::size_t i = rank_; i-- > 0;) {
        Scalar s = y[i];
        for (std::size_t j = i + 1; j < rank_; ++j)
            s -= qr_(i, j) * z[j];
        z[i] = s / qr_(i, i);
    }
    std::vector<Scalar> x(cols_, 0.0);
    for (std::size_t k = 0; k < cols_; ++k)
        x[perm_[k]] = z[k];
    return x;
}

std::vector<std::vector<Scalar>> PivotedQR::null_space() const {
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = rank_; free < cols_; ++free) {
        // permuted coordinates [-R11^-1 R12 e_free; e_free]
        std::vector<Scalar> z(cols_, 0.0);
        z[free] = 1.0;
        for (std::size_t i = rank_; i-- > 0;) {
            Scalar s = -qr_(i, free);
            for (std::size_t j = i + 1; j < rank_; ++j)
                s -= qr_(i, j) * z[j];
            z[i] = s / qr_(i, i);
        }
        std::vector<Scalar> x(cols_, 0.0);
        for (std::size_t k = 0; k < cols_; ++k)
            x[perm_[k]] = z[k];
        basis.push_back(std::move(x));
    }
    orthonormalize_columns(basis);
    return basis;
}

std::vector<Scalar> PivotedQR::solve_min_norm(std::span<const Scalar> b) const {
    auto x = basic_solution(b);
    const auto null = null_space();
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& v : null) {
            const Scalar s = dot(v, x);
            for (std::size_t k = 0; k < x.size(); ++k)
                x[k] -= s * v[k];
        }
    return x;
}

} // namespace fredholm

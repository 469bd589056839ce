#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace fredholm {

using Scalar = std::complex<double>;

/// Numerical thresholds shared by all rank and residual decisions.
struct Tolerances {
    /// relative threshold below which a pivot / column is considered negligible
    double rank_tol = 1e-10;
    /// relative acceptance threshold for solution residuals
    double residual_tol = 1e-8;
    /// orthogonality check threshold
    double ortho_tol = 1e-10;

    /// Throws InvalidArgument unless all thresholds are positive and rank_tol < 1.
    void validate() const;
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

///
/// Finite coordinate model of a Hilbert space: C^N with the weighted inner
/// product (u,v) = sum_k w_k u_k conj(v_k). Unit weights give the standard
/// model, quadrature weights the integral-equation model.
///
class Space {
public:
    /// Standard model with unit weights.
    static SpacePtr standard(std::size_t dim);
    /// Weighted model; every weight must be strictly positive.
    static SpacePtr weighted(std::vector<double> weights);

    std::size_t dim() const noexcept { return weights_.size(); }
    std::span<const double> weights() const noexcept { return weights_; }
    bool has_unit_weights() const noexcept { return unit_; }

    /// Same dimension and element-wise identical weights.
    bool compatible_with(const Space& other) const noexcept;

private:
    explicit Space(std::vector<double> weights);

    std::vector<double> weights_;
    bool unit_ = true;
};

bool compatible(const SpacePtr& a, const SpacePtr& b) noexcept;

/// Throws DimensionError naming `context` when the spaces differ.
void require_compatible(const SpacePtr& a, const SpacePtr& b, const char* context);

///
/// Element of a Space. Arithmetic is element-wise; the space is carried along
/// and checked on every binary operation.
///
class Vector {
public:
    Vector() = default;
    /// zero vector
    explicit Vector(SpacePtr space);
    Vector(SpacePtr space, std::vector<Scalar> coords);
    Vector(SpacePtr space, std::initializer_list<Scalar> coords);

    /// k-th coordinate unit vector
    static Vector unit(SpacePtr space, std::size_t k);
    /// embeds real coordinates with zero imaginary part
    static Vector from_real(SpacePtr space, std::span<const double> coords);

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return coords_.size(); }
    std::span<const Scalar> coords() const noexcept { return coords_; }
    std::span<Scalar> coords() noexcept { return coords_; }

    Scalar& operator[](std::size_t k) { return coords_[k]; }
    const Scalar& operator[](std::size_t k) const { return coords_[k]; }

    Vector& operator+=(const Vector& other);
    Vector& operator-=(const Vector& other);
    Vector& operator*=(Scalar s);
    /// this += s * x
    Vector& axpy(Scalar s, const Vector& x);

    /// norm induced by the weighted inner product
    double norm() const;
    /// max-abs coordinate
    double max_abs() const;

private:
    SpacePtr space_;
    std::vector<Scalar> coords_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(Scalar s, Vector v);

/// (u,v) = sum_k w_k u_k conj(v_k); linear in u, conjugate-linear in v.
Scalar inner_product(const Vector& u, const Vector& v);

///
/// Orthonormal basis (in the weighted inner product) of span{vs}, by modified
/// Gram-Schmidt with one re-orthogonalization pass. A column is dropped when its
/// projected norm falls below rank_tol times the largest input norm, so the
/// result size is the numerical rank of the input set.
///
std::vector<Vector> orthonormalize(std::span<const Vector> vs, const Tolerances& tol = {});

/// Removes from v its components along the orthonormal vectors `basis`.
Vector project_out(Vector v, std::span<const Vector> basis);

///
/// Fixes a reproducible representative of an orthonormal basis: each vector is
/// rotated so that its leading significant coordinate is real positive, and the
/// vectors are ordered by the index of that coordinate (ascending), ties by its
/// magnitude (descending). Orthonormality is preserved.
///
void canonicalize_basis(std::vector<Vector>& basis);

} // namespace fredholm

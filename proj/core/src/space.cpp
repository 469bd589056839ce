#include "fredholm/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fredholm/error.hpp"

namespace fredholm {

void Tolerances::validate() const {
    if (!(rank_tol > 0.0) || !(rank_tol < 1.0))
        throw InvalidArgument("rank_tol must lie in (0, 1), got " + std::to_string(rank_tol));
    if (!(residual_tol > 0.0))
        throw InvalidArgument("residual_tol must be positive, got " + std::to_string(residual_tol));
    if (!(ortho_tol > 0.0))
        throw InvalidArgument("ortho_tol must be positive, got " + std::to_string(ortho_tol));
}

//
// Space
//

Space::Space(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty())
        throw InvalidArgument("space dimension must be at least 1");
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        if (!(weights_[k] > 0.0) || !std::isfinite(weights_[k]))
            throw InvalidArgument("weight " + std::to_string(k) + " must be positive and finite");
    }
    unit_ = std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

SpacePtr Space::standard(std::size_t dim) {
    return SpacePtr(new Space(std::vector<double>(dim, 1.0)));
}

SpacePtr Space::weighted(std::vector<double> weights) {
    return SpacePtr(new Space(std::move(weights)));
}

bool Space::compatible_with(const Space& other) const noexcept {
    return weights_ == other.weights_;
}

bool compatible(const SpacePtr& a, const SpacePtr& b) noexcept {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return a->compatible_with(*b);
}

void require_compatible(const SpacePtr& a, const SpacePtr& b, const char* context) {
    if (!compatible(a, b)) {
        const auto da = a ? a->dim() : 0;
        const auto db = b ? b->dim() : 0;
        throw DimensionError(std::string(context) + ": incompatible spaces (dim " + std::to_string(da) +
                             " vs " + std::to_string(db) + ")");
    }
}

//
// Vector
//

Vector::Vector(SpacePtr space) : space_(std::move(space)), coords_(space_ ? space_->dim() : 0) {}

Vector::Vector(SpacePtr space, std::vector<Scalar> coords) : space_(std::move(space)), coords_(std::move(coords)) {
    if (!space_ || coords_.size() != space_->dim())
        throw DimensionError("vector has " + std::to_string(coords_.size()) + " coordinates, space dimension is " +
                             std::to_string(space_ ? space_->dim() : 0));
}

Vector::Vector(SpacePtr space, std::initializer_list<Scalar> coords)
    : Vector(std::move(space), std::vector<Scalar>(coords)) {}

Vector Vector::unit(SpacePtr space, std::size_t k) {
    Vector v(std::move(space));
    if (k >= v.size())
        throw DimensionError("unit vector index out of range");
    v[k] = 1.0;
    return v;
}

Vector Vector::from_real(SpacePtr space, std::span<const double> coords) {
    return Vector(std::move(space), std::vector<Scalar>(coords.begin(), coords.end()));
}

Vector& Vector::operator+=(const Vector& other) {
    require_compatible(space_, other.space_, "vector addition");
    for (std::size_t k = 0; k < coords_.size(); ++k)
        coords_[k] += other.coords_[k];
    return *this;
}

Vector& Vector::operator-=(const Vector& other) {
    require_compatible(space_, other.space_, "vector subtraction");
    for (std::size_t k = 0; k < coords_.size(); ++k)
        coords_[k] -= other.coords_[k];
    return *this;
}

Vector& Vector::operator*=(Scalar s) {
    for (auto& c : coords_)
        c *= s;
    return *this;
}

Vector& Vector::axpy(Scalar s, const Vector& x) {
    require_compatible(space_, x.space_, "axpy");
    for (std::size_t k = 0; k < coords_.size(); ++k)
        coords_[k] += s * x.coords_[k];
    return *this;
}

double Vector::norm() const {
    if (!space_)
        return 0.0;
    const auto w = space_->weights();
    double sum = 0.0;
    for (std::size_t k = 0; k < coords_.size(); ++k)
        sum += w[k] * std::norm(coords_[k]);
    return std::sqrt(sum);
}

double Vector::max_abs() const {
    double m = 0.0;
    for (const auto& c : coords_)
        m = std::max(m, std::abs(c));
    return m;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(Scalar s, Vector v) { return v *= s; }

Scalar inner_product(const Vector& u, const Vector& v) {
    require_compatible(u.space(), v.space(), "inner product");
    const auto w = u.space()->weights();
    Scalar sum = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        sum += w[k] * (u[k] * std::conj(v[k]));
    return sum;
}

//
// orthonormalization
//

std::vector<Vector> orthonormalize(std::span<const Vector> vs, const Tolerances& tol) {
    std::vector<Vector> basis;
    if (vs.empty())
        return basis;

    double largest = 0.0;
    for (const auto& v : vs) {
        require_compatible(vs.front().space(), v.space(), "orthonormalize");
        largest = std::max(largest, v.norm());
    }
    if (largest == 0.0)
        return basis;

    const double drop = tol.rank_tol * largest;
    for (const auto& v : vs) {
        Vector q = v;
        // two MGS sweeps; the second restores orthogonality lost to cancellation
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& e : basis)
                q.axpy(-inner_product(q, e), e);
        }
        const double nrm = q.norm();
        if (nrm <= drop)
            continue;
        q *= 1.0 / nrm;
        basis.push_back(std::move(q));
    }
    return basis;
}

Vector project_out(Vector v, std::span<const Vector> basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& e : basis)
            v.axpy(-inner_product(v, e), e);
    }
    return v;
}

void canonicalize_basis(std::vector<Vector>& basis) {
    struct Key {
        std::size_t index;
        double magnitude;
    };
    std::vector<Key> keys;
    keys.reserve(basis.size());

    for (auto& v : basis) {
        const double cutoff = 1e-8 * v.max_abs();
        std::size_t lead = 0;
        while (lead + 1 < v.size() && std::abs(v[lead]) <= cutoff)
            ++lead;
        const double mag = std::abs(v[lead]);
        if (mag > 0.0)
            v *= std::conj(v[lead]) / mag;
        v[lead] = mag;
        keys.push_back({lead, mag});
    }

    std::vector<std::size_t> order(basis.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (keys[i].index != keys[j].index)
            return keys[i].index < keys[j].index;
        return keys[i].magnitude > keys[j].magnitude;
    });

    std::vector<Vector> sorted;
    sorted.reserve(basis.size());
    for (auto i : order)
        sorted.push_back(std::move(basis[i]));
    basis = std::move(sorted);
}

} // namespace fredholm

#include "vilenkin/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace vilenkin {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> unit_root(int p, long e) {
    long r = e % p;
    if (r < 0) r += p;
    double arg = kTwoPi * static_cast<double>(r) / static_cast<double>(p);
    return {std::cos(arg), std::sin(arg)};
}

int mod_p(long e, int p) {
    long r = e % p;
    if (r < 0) r += p;
    return static_cast<int>(r);
}

}  // namespace

RootScalar RootScalar::zero(int p) { return RootScalar(p, true, 0, true, {0.0, 0.0}); }

RootScalar RootScalar::one(int p) { return RootScalar(p, false, 0, true, {1.0, 0.0}); }

RootScalar RootScalar::root(int p, long e) {
    return RootScalar(p, false, mod_p(e, p), true, {0.0, 0.0});
}

RootScalar RootScalar::unimodular(int p, std::complex<double> z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-6)
        throw std::invalid_argument("RootScalar::unimodular: |z| must be 1");
    return RootScalar(p, false, 0, false, z / std::abs(z));
}

RootScalar RootScalar::lift(int p, std::complex<double> z, double tol) {
    if (std::abs(z) <= tol) return zero(p);
    for (int e = 0; e < p; ++e) {
        if (std::abs(z - unit_root(p, e)) <= tol) return root(p, e);
    }
    return unimodular(p, z);
}

int RootScalar::exponent() const {
    if (zero_ || !exact_)
        throw std::logic_error("RootScalar::exponent: not an exact root");
    return e_;
}

RootScalar RootScalar::times(const RootScalar& other) const {
    if (p_ != other.p_) throw std::invalid_argument("RootScalar: mismatched p");
    if (zero_ || other.zero_) return zero(p_);
    if (exact_ && other.exact_) return root(p_, e_ + other.e_);
    return unimodular(p_, to_complex() * other.to_complex());
}

RootScalar RootScalar::conj() const {
    if (zero_) return *this;
    if (exact_) return root(p_, -e_);
    return unimodular(p_, std::conj(z_));
}

std::complex<double> RootScalar::to_complex() const {
    if (zero_) return {0.0, 0.0};
    if (exact_) return unit_root(p_, e_);
    return z_;
}

bool RootScalar::operator==(const RootScalar& other) const {
    if (p_ != other.p_) return false;
    if (zero_ != other.zero_) return false;
    if (zero_) return true;
    if (exact_ && other.exact_) return e_ == other.e_;
    return to_complex() == other.to_complex();
}

RootSum::RootSum(int p)
    : p_(p), exact_(true), coeff_(static_cast<std::size_t>(p), 0), scale_(0), z_(0.0, 0.0) {
    if (p < 2) throw std::invalid_argument("RootSum: p must be >= 2");
}

RootSum RootSum::one(int p) { return integer(p, 1); }

RootSum RootSum::root(int p, long e) {
    RootSum r(p);
    r.coeff_[static_cast<std::size_t>(mod_p(e, p))] = 1;
    return r;
}

RootSum RootSum::integer(int p, std::int64_t n) {
    RootSum r(p);
    r.coeff_[0] = n;
    r.normalize();
    return r;
}

RootSum RootSum::p_power(int p, int k) {
    RootSum r(p);
    r.coeff_[0] = 1;
    r.scale_ = -k;
    r.normalize();
    return r;
}

RootSum RootSum::numeric(int p, std::complex<double> z) {
    RootSum r(p);
    r.exact_ = false;
    r.z_ = z;
    return r;
}

RootSum RootSum::from_scalar(const RootScalar& s) {
    if (s.is_zero()) return zero(s.p());
    if (s.exact()) return root(s.p(), s.exponent());
    return numeric(s.p(), s.to_complex());
}

void RootSum::normalize() {
    if (!exact_) return;
    // Canonical form: minimum multiplicity 0 (the all-ones vector is 0),
    // then strip common p factors into the scale.
    std::int64_t mn = coeff_[0];
    for (std::int64_t c : coeff_) mn = std::min(mn, c);
    if (mn != 0)
        for (auto& c : coeff_) c -= mn;
    bool all_zero = true;
    for (std::int64_t c : coeff_) all_zero &= (c == 0);
    if (all_zero) {
        scale_ = 0;
        return;
    }
    while (scale_ > 0) {
        bool divisible = true;
        for (std::int64_t c : coeff_) divisible &= (c % p_ == 0);
        if (!divisible) break;
        for (auto& c : coeff_) c /= p_;
        --scale_;
    }
}

bool RootSum::is_zero(double tol) const {
    if (exact_) {
        for (std::size_t k = 1; k < coeff_.size(); ++k)
            if (coeff_[k] != coeff_[0]) return false;
        return true;
    }
    return std::abs(z_) <= tol;
}

RootSum RootSum::operator+(const RootSum& other) const {
    RootSum r = *this;
    r += other;
    return r;
}

RootSum& RootSum::operator+=(const RootSum& other) {
    if (p_ != other.p_) throw std::invalid_argument("RootSum: mismatched p");
    if (!exact_ || !other.exact_) {
        *this = numeric(p_, to_complex() + other.to_complex());
        return *this;
    }
    RootSum rhs = other;
    while (scale_ < rhs.scale_) {
        for (auto& c : coeff_) c *= p_;
        ++scale_;
    }
    while (rhs.scale_ < scale_) {
        for (auto& c : rhs.coeff_) c *= p_;
        ++rhs.scale_;
    }
    for (std::size_t k = 0; k < coeff_.size(); ++k) coeff_[k] += rhs.coeff_[k];
    normalize();
    return *this;
}

RootSum RootSum::operator-() const {
    if (!exact_) return numeric(p_, -z_);
    RootSum r = *this;
    for (auto& c : r.coeff_) c = -c;
    r.normalize();
    return r;
}

RootSum RootSum::operator-(const RootSum& other) const { return *this + (-other); }

RootSum RootSum::operator*(const RootSum& other) const {
    if (p_ != other.p_) throw std::invalid_argument("RootSum: mismatched p");
    if (!exact_ || !other.exact_) return numeric(p_, to_complex() * other.to_complex());
    RootSum r(p_);
    r.scale_ = scale_ + other.scale_;
    for (int a = 0; a < p_; ++a) {
        if (coeff_[static_cast<std::size_t>(a)] == 0) continue;
        for (int b = 0; b < p_; ++b) {
            if (other.coeff_[static_cast<std::size_t>(b)] == 0) continue;
            int k = a + b;
            if (k >= p_) k -= p_;
            r.coeff_[static_cast<std::size_t>(k)] +=
                coeff_[static_cast<std::size_t>(a)] * other.coeff_[static_cast<std::size_t>(b)];
        }
    }
    r.normalize();
    return r;
}

RootSum RootSum::conj() const {
    if (!exact_) return numeric(p_, std::conj(z_));
    RootSum r(p_);
    r.scale_ = scale_;
    for (int k = 0; k < p_; ++k) {
        int j = (p_ - k) % p_;
        r.coeff_[static_cast<std::size_t>(j)] = coeff_[static_cast<std::size_t>(k)];
    }
    r.normalize();
    return r;
}

RootSum RootSum::scaled_by_p_power(int k) const {
    if (!exact_) {
        return numeric(p_, z_ * std::pow(static_cast<double>(p_), static_cast<double>(k)));
    }
    RootSum r = *this;
    r.scale_ -= k;
    r.normalize();
    return r;
}

RootSum RootSum::norm2() const { return (*this) * conj(); }

std::complex<double> RootSum::to_complex() const {
    if (!exact_) return z_;
    // The representation is only unique modulo the all-ones vector; evaluate
    // the sparsest representative so values like -1 = w + w^2 come out float
    // exact.
    std::int64_t mode = 0;
    int best = -1;
    for (int k = 0; k < p_; ++k) {
        int count = 0;
        for (int j = 0; j < p_; ++j)
            count += coeff_[static_cast<std::size_t>(j)] == coeff_[static_cast<std::size_t>(k)];
        if (count > best) {
            best = count;
            mode = coeff_[static_cast<std::size_t>(k)];
        }
    }
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < p_; ++k) {
        std::int64_t c = coeff_[static_cast<std::size_t>(k)] - mode;
        if (c != 0) acc += static_cast<double>(c) * unit_root(p_, k);
    }
    return acc * std::pow(static_cast<double>(p_), static_cast<double>(-scale_));
}

double RootSum::distance(const RootSum& other) const {
    if (exact_ && other.exact_) {
        RootSum d = *this - other;
        return d.is_zero() ? 0.0 : std::abs(d.to_complex());
    }
    return std::abs(to_complex() - other.to_complex());
}

bool RootSum::exactly_equal(const RootSum& other) const {
    RootSum d = *this - other;
    return d.exact_ && d.is_zero();
}

}  // namespace vilenkin

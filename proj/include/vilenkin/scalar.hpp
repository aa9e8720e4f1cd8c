#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace vilenkin {

/// A value of a character pairing or mask coefficient: zero or a unimodular
/// scalar.  The exact representation stores the phase as an exponent e with
/// value exp(2*pi*i*e/p); masks with arbitrary unimodular phases fall back to
/// a plain complex payload, and every consumer downstream follows suit.
class RootScalar {
public:
    static RootScalar zero(int p);
    static RootScalar one(int p);
    static RootScalar root(int p, long e);
    static RootScalar unimodular(int p, std::complex<double> z);
    /// Recognize 0 or a p-th root of unity in a complex value (used when
    /// reading files back); anything else is kept as a general phase.
    static RootScalar lift(int p, std::complex<double> z, double tol = 1e-9);

    int p() const { return p_; }
    bool is_zero() const { return zero_; }
    bool exact() const { return exact_; }
    /// Phase exponent in [0, p).  Only meaningful for exact nonzero values.
    int exponent() const;

    RootScalar times(const RootScalar& other) const;
    RootScalar conj() const;
    std::complex<double> to_complex() const;

    bool operator==(const RootScalar& other) const;

private:
    RootScalar(int p, bool zero, int e, bool exact, std::complex<double> z)
        : p_(p), zero_(zero), e_(e), exact_(exact), z_(z) {}

    int p_;
    bool zero_;
    int e_;
    bool exact_;
    std::complex<double> z_;
};

/// Scalar for everything that is a *sum* of pairings: Fourier coefficients,
/// function samples, inner products.  Exact values are elements of
/// Z[w][1/p] with w = exp(2*pi*i/p), stored as integer multiplicities of
/// w^0..w^{p-1} over a power-of-p denominator.  The only identity needed for
/// canonical form is 1 + w + ... + w^{p-1} = 0 (p prime).  Once any operand
/// carries an inexact phase the result degrades to complex<double> and the
/// verification layer switches from identity checks to tolerance checks.
class RootSum {
public:
    explicit RootSum(int p);  // zero
    static RootSum zero(int p) { return RootSum(p); }
    static RootSum one(int p);
    static RootSum root(int p, long e);
    static RootSum integer(int p, std::int64_t n);
    static RootSum p_power(int p, int k);  // p^k, k may be negative
    static RootSum numeric(int p, std::complex<double> z);
    static RootSum from_scalar(const RootScalar& s);

    int p() const { return p_; }
    bool exact() const { return exact_; }
    bool is_zero(double tol = 0.0) const;

    RootSum operator+(const RootSum& other) const;
    RootSum operator-(const RootSum& other) const;
    RootSum operator*(const RootSum& other) const;
    RootSum& operator+=(const RootSum& other);
    RootSum operator-() const;

    RootSum conj() const;
    RootSum scaled_by_p_power(int k) const;  // multiply by p^k
    RootSum norm2() const;                   // |z|^2 = z * conj(z)

    std::complex<double> to_complex() const;
    /// |this - other| with an exact zero reported as literal 0.0.
    double distance(const RootSum& other) const;
    bool exactly_equal(const RootSum& other) const;

private:
    void normalize();

    int p_;
    bool exact_;
    std::vector<std::int64_t> coeff_;  // size p, multiplicity of w^k
    int scale_;                        // value = p^{-scale} * sum coeff[k] w^k
    std::complex<double> z_;           // payload when !exact_
};

}  // namespace vilenkin

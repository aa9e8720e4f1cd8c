#pragma once

#include <compare>
#include <map>
#include <vector>

#include "vilenkin/scalar.hpp"

namespace vilenkin {

/// Parameters of the p-adic Vilenkin group model: the prime p and the window
/// of digit indices the finite model is allowed to touch.  Digits outside
/// [lo, hi] raise instead of being silently dropped.
struct GroupParams {
    int p;
    int lo = -16;
    int hi = 16;

    explicit GroupParams(int p_, int lo_ = -16, int hi_ = 16);

    /// The constructions downstream assume p >= 3; p = 2 is accepted for
    /// Haar-style sanity cases but flagged.
    bool outside_p_hypothesis() const { return p == 2; }

    bool operator==(const GroupParams& o) const { return p == o.p && lo == o.lo && hi == o.hi; }
};

/// Element of the group: a finitely supported digit word x = sum a_k g_k with
/// a_k in {0,..,p-1}.  Stored sparsely with no explicit zeros, so structural
/// equality is group equality.  Addition is digit-wise mod p, no carries.
class GroupElement {
public:
    explicit GroupElement(GroupParams params) : params_(params) {}
    static GroupElement zero(GroupParams params) { return GroupElement(params); }
    /// g_k: the word with a single digit 1 at index k.
    static GroupElement basis(GroupParams params, int k);
    /// Digits d[0..n) placed at indices lo_index, lo_index+1, ...
    static GroupElement from_word(GroupParams params, int lo_index, const std::vector<int>& d);

    const GroupParams& params() const { return params_; }
    int digit(int k) const;
    GroupElement with_digit(int k, int value) const;
    const std::map<int, int>& digits() const { return digits_; }

    bool is_zero() const { return digits_.empty(); }
    /// x in G_n: all digits below index n vanish.
    bool in_subgroup(int n) const;

    GroupElement add(const GroupElement& y) const;
    GroupElement sub(const GroupElement& y) const;
    /// A x = sum a_k g_{k-1}: every digit index drops by one.
    GroupElement dilate() const;
    GroupElement dilate_inv() const;

    bool operator==(const GroupElement& o) const { return digits_ == o.digits_; }
    auto operator<=>(const GroupElement& o) const { return digits_ <=> o.digits_; }

private:
    GroupParams params_;
    std::map<int, int> digits_;
};

/// Character of the group: a finite Rademacher word chi = prod r_k^{e_k}.
/// The value on x is exp(2 pi i / p * sum e_k x_k).
class Character {
public:
    explicit Character(GroupParams params) : params_(params) {}
    static Character trivial(GroupParams params) { return Character(params); }
    static Character rademacher(GroupParams params, int n, int power = 1);
    static Character from_word(GroupParams params, int lo_index, const std::vector<int>& e);

    const GroupParams& params() const { return params_; }
    int exponent(int k) const;
    Character with_exponent(int k, int value) const;
    const std::map<int, int>& exponents() const { return exps_; }

    bool is_trivial() const { return exps_.empty(); }
    /// chi in G_n^perp: all exponents at indices >= n vanish.
    bool in_annihilator(int n) const;
    int top_index() const;  // largest index with nonzero exponent; INT_MIN if trivial

    Character times(const Character& psi) const;
    Character power(int t) const;
    /// chi A: exponent indices up by one (r_n A = r_{n+1}).
    Character dilate() const;
    /// chi A^{-1}: exponent indices down by one.
    Character dilate_inv() const;

    bool operator==(const Character& o) const { return exps_ == o.exps_; }
    auto operator<=>(const Character& o) const { return exps_ <=> o.exps_; }

private:
    GroupParams params_;
    std::map<int, int> exps_;
};

/// (chi, x) = exp(2 pi i / p * sum_k e_k a_k).  Exact.
RootScalar pair(const Character& chi, const GroupElement& x);

/// Closed-form evaluation of the dual-measure integral of (chi, x) over the
/// coset G_n^perp * rep: equals p^n (rep, x) when x lies in G_n and 0
/// otherwise.  Never sums anything.
RootSum integrate_char_over_coset(int n, const Character& rep, const GroupElement& x);

/// The Haar-measure dual: the integral of (chi, x) over the coset G_n + h
/// equals p^{-n} (chi, h) when chi lies in G_n^perp and 0 otherwise.
RootSum integrate_elem_over_coset(int n, const GroupElement& h, const Character& chi);

/// mu(G_n) = p^{-n};  nu(G_n^perp) = p^n;  mu(G_n) * nu(G_n^perp) = 1.
RootSum haar_measure(const GroupParams& params, int n);
RootSum dual_measure(const GroupParams& params, int n);

/// Coset of G_{-N}^perp inside the character group, identified by its
/// exponent word on indices -N, -N+1, ...  Trailing zeros are trimmed so two
/// cosets are equal iff their words are.
class CharCoset {
public:
    CharCoset(int N, std::vector<int> word);
    static CharCoset trivial(int N) { return CharCoset(N, {}); }
    /// Drop exponents below -N; keep the rest as the coset word.
    static CharCoset of_character(const Character& chi, int N);

    int N() const { return N_; }
    const std::vector<int>& word() const { return word_; }
    /// Exponent at index k >= -N (0 past the stored word).
    int exponent(int k) const;
    /// Word padded out to indices -N..upto inclusive.
    std::vector<int> padded_word(int upto) const;
    bool is_trivial() const { return word_.empty(); }
    /// Index of the top nonzero exponent; -N-1 when trivial.
    int top_index() const { return -N_ + static_cast<int>(word_.size()) - 1; }

    /// The coset of chi A^{-1} when this is the coset of chi: indices drop by
    /// one and the exponent at -N falls into G_{-N}^perp.
    CharCoset shift_down() const;
    /// Inverse direction with a fresh bottom exponent.
    CharCoset shift_up(int bottom) const;

    Character representative(const GroupParams& params) const;

    bool operator==(const CharCoset& o) const { return N_ == o.N_ && word_ == o.word_; }
    auto operator<=>(const CharCoset& o) const = default;

private:
    int N_;
    std::vector<int> word_;  // word_[i] = exponent at index -N+i, no trailing zeros
};

}  // namespace vilenkin

#include "vilenkin/group.hpp"

#include <climits>
#include <stdexcept>
#include <string>

namespace vilenkin {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void check_same_params(const GroupParams& a, const GroupParams& b) {
    if (!(a == b)) throw std::invalid_argument("mismatched group parameters");
}

}  // namespace

GroupParams::GroupParams(int p_, int lo_, int hi_) : p(p_), lo(lo_), hi(hi_) {
    if (!is_prime(p)) throw std::invalid_argument("GroupParams: p must be prime, got " + std::to_string(p));
    if (lo >= hi) throw std::invalid_argument("GroupParams: need lo < hi");
}

GroupElement GroupElement::basis(GroupParams params, int k) {
    return zero(params).with_digit(k, 1);
}

GroupElement GroupElement::from_word(GroupParams params, int lo_index, const std::vector<int>& d) {
    GroupElement x(params);
    for (std::size_t i = 0; i < d.size(); ++i) x = x.with_digit(lo_index + static_cast<int>(i), d[i]);
    return x;
}

int GroupElement::digit(int k) const {
    auto it = digits_.find(k);
    return it == digits_.end() ? 0 : it->second;
}

GroupElement GroupElement::with_digit(int k, int value) const {
    if (k < params_.lo || k > params_.hi)
        throw std::out_of_range("GroupElement: digit index " + std::to_string(k) + " outside window");
    if (value < 0 || value >= params_.p)
        throw std::invalid_argument("GroupElement: digit must lie in [0, p)");
    GroupElement x = *this;
    if (value == 0)
        x.digits_.erase(k);
    else
        x.digits_[k] = value;
    return x;
}

bool GroupElement::in_subgroup(int n) const {
    return digits_.empty() || digits_.begin()->first >= n;
}

GroupElement GroupElement::add(const GroupElement& y) const {
    check_same_params(params_, y.params_);
    GroupElement r = *this;
    for (const auto& [k, b] : y.digits_) {
        int v = (r.digit(k) + b) % params_.p;
        if (v == 0)
            r.digits_.erase(k);
        else
            r.digits_[k] = v;
    }
    return r;
}

GroupElement GroupElement::sub(const GroupElement& y) const {
    check_same_params(params_, y.params_);
    GroupElement r = *this;
    for (const auto& [k, b] : y.digits_) {
        int v = ((r.digit(k) - b) % params_.p + params_.p) % params_.p;
        if (v == 0)
            r.digits_.erase(k);
        else
            r.digits_[k] = v;
    }
    return r;
}

GroupElement GroupElement::dilate() const {
    GroupElement r(params_);
    for (const auto& [k, a] : digits_) r = r.with_digit(k - 1, a);
    return r;
}

GroupElement GroupElement::dilate_inv() const {
    GroupElement r(params_);
    for (const auto& [k, a] : digits_) r = r.with_digit(k + 1, a);
    return r;
}

Character Character::rademacher(GroupParams params, int n, int power) {
    return trivial(params).with_exponent(n, ((power % params.p) + params.p) % params.p);
}

Character Character::from_word(GroupParams params, int lo_index, const std::vector<int>& e) {
    Character chi(params);
    for (std::size_t i = 0; i < e.size(); ++i)
        chi = chi.with_exponent(lo_index + static_cast<int>(i), e[i]);
    return chi;
}

int Character::exponent(int k) const {
    auto it = exps_.find(k);
    return it == exps_.end() ? 0 : it->second;
}

Character Character::with_exponent(int k, int value) const {
    if (k < params_.lo || k > params_.hi)
        throw std::out_of_range("Character: exponent index " + std::to_string(k) + " outside window");
    if (value < 0 || value >= params_.p)
        throw std::invalid_argument("Character: exponent must lie in [0, p)");
    Character chi = *this;
    if (value == 0)
        chi.exps_.erase(k);
    else
        chi.exps_[k] = value;
    return chi;
}

bool Character::in_annihilator(int n) const {
    return exps_.empty() || exps_.rbegin()->first < n;
}

int Character::top_index() const {
    return exps_.empty() ? INT_MIN : exps_.rbegin()->first;
}

Character Character::times(const Character& psi) const {
    check_same_params(params_, psi.params_);
    Character r = *this;
    for (const auto& [k, e] : psi.exps_) {
        int v = (r.exponent(k) + e) % params_.p;
        if (v == 0)
            r.exps_.erase(k);
        else
            r.exps_[k] = v;
    }
    return r;
}

Character Character::power(int t) const {
    Character r = *this;
    int tm = ((t % params_.p) + params_.p) % params_.p;
    for (auto it = r.exps_.begin(); it != r.exps_.end();) {
        int v = (it->second * tm) % params_.p;
        if (v == 0)
            it = r.exps_.erase(it);
        else {
            it->second = v;
            ++it;
        }
    }
    return r;
}

Character Character::dilate() const {
    Character r(params_);
    for (const auto& [k, e] : exps_) r = r.with_exponent(k + 1, e);
    return r;
}

Character Character::dilate_inv() const {
    Character r(params_);
    for (const auto& [k, e] : exps_) r = r.with_exponent(k - 1, e);
    return r;
}

RootScalar pair(const Character& chi, const GroupElement& x) {
    check_same_params(chi.params(), x.params());
    long e = 0;
    for (const auto& [k, a] : chi.exponents()) e += static_cast<long>(a) * x.digit(k);
    return RootScalar::root(chi.params().p, e);
}

RootSum integrate_char_over_coset(int n, const Character& rep, const GroupElement& x) {
    const int p = rep.params().p;
    if (!x.in_subgroup(n)) return RootSum::zero(p);
    return RootSum::from_scalar(pair(rep, x)).scaled_by_p_power(n);
}

RootSum integrate_elem_over_coset(int n, const GroupElement& h, const Character& chi) {
    const int p = chi.params().p;
    if (!chi.in_annihilator(n)) return RootSum::zero(p);
    return RootSum::from_scalar(pair(chi, h)).scaled_by_p_power(-n);
}

RootSum haar_measure(const GroupParams& params, int n) { return RootSum::p_power(params.p, -n); }

RootSum dual_measure(const GroupParams& params, int n) { return RootSum::p_power(params.p, n); }

CharCoset::CharCoset(int N, std::vector<int> word) : N_(N), word_(std::move(word)) {
    while (!word_.empty() && word_.back() == 0) word_.pop_back();
}

CharCoset CharCoset::of_character(const Character& chi, int N) {
    std::vector<int> w;
    int top = chi.top_index();
    for (int k = -N; k <= top; ++k) w.push_back(chi.exponent(k));
    return CharCoset(N, std::move(w));
}

int CharCoset::exponent(int k) const {
    int i = k + N_;
    if (i < 0) throw std::out_of_range("CharCoset: index below -N");
    if (i >= static_cast<int>(word_.size())) return 0;
    return word_[static_cast<std::size_t>(i)];
}

std::vector<int> CharCoset::padded_word(int upto) const {
    std::vector<int> w;
    for (int k = -N_; k <= upto; ++k) w.push_back(exponent(k));
    return w;
}

CharCoset CharCoset::shift_down() const {
    if (word_.empty()) return *this;
    return CharCoset(N_, std::vector<int>(word_.begin() + 1, word_.end()));
}

CharCoset CharCoset::shift_up(int bottom) const {
    std::vector<int> w;
    w.reserve(word_.size() + 1);
    w.push_back(bottom);
    w.insert(w.end(), word_.begin(), word_.end());
    return CharCoset(N_, std::move(w));
}

Character CharCoset::representative(const GroupParams& params) const {
    return Character::from_word(params, -N_, word_);
}

}  // namespace vilenkin

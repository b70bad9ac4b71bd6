#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "rational.hpp"

namespace stabkit {

struct ContextError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- variables

enum class VarKind : std::uint8_t { Sim = 0, SimFactor = 1, Tor = 2 };

// Sim is X (or X', or Z on a source ring). SimFactor(i) is X'_i or X_i.
// Tor(i,j) is X_{i,j}. Indices are 1-based as in the math.
struct VarId {
    VarKind kind = VarKind::Sim;
    int i = 0;
    int j = 0;

    static VarId sim() { return {VarKind::Sim, 0, 0}; }
    static VarId sim_factor(int i) { return {VarKind::SimFactor, i, 0}; }
    static VarId tor(int i, int j) { return {VarKind::Tor, i, j}; }

    auto operator<=>(const VarId&) const = default;

    std::string name() const {
        switch (kind) {
            case VarKind::Sim: return "X";
            case VarKind::SimFactor: return "Xp_" + std::to_string(i);
            case VarKind::Tor: return "X_" + std::to_string(i) + "_" + std::to_string(j);
        }
        return "?";
    }

    static std::optional<VarId> parse(const std::string& s) {
        auto num = [](const std::string& t, int& out) {
            if (t.empty() || t.size() > 6) return false;
            for (char c : t)
                if (c < '0' || c > '9') return false;
            out = std::stoi(t);
            return out >= 1;
        };
        if (s == "X") return sim();
        if (s.rfind("Xp_", 0) == 0) {
            int i;
            if (num(s.substr(3), i)) return sim_factor(i);
            return std::nullopt;
        }
        if (s.rfind("X_", 0) == 0) {
            auto rest = s.substr(2);
            auto us = rest.find('_');
            if (us == std::string::npos) return std::nullopt;
            int i, j;
            if (num(rest.substr(0, us), i) && num(rest.substr(us + 1), j)) return tor(i, j);
        }
        return std::nullopt;
    }
};

// ---------------------------------------------------------------- monomials

namespace detail {
inline std::int32_t checked_exp(std::int64_t e) {
    if (e > INT32_MAX || e < INT32_MIN) throw OverflowError("exponent exceeds 32-bit range");
    return static_cast<std::int32_t>(e);
}
}  // namespace detail

class Monomial {
public:
    using Entry = std::pair<VarId, std::int32_t>;

    Monomial() = default;
    explicit Monomial(const std::map<VarId, std::int64_t>& exps) {
        for (auto& [v, e] : exps)
            if (e != 0) entries_.emplace_back(v, detail::checked_exp(e));
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_one() const { return entries_.empty(); }

    std::int32_t exp(const VarId& v) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                                   [](const Entry& a, const VarId& b) { return a.first < b; });
        return (it != entries_.end() && it->first == v) ? it->second : 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        auto ia = a.entries_.begin(), ib = b.entries_.begin();
        while (ia != a.entries_.end() || ib != b.entries_.end()) {
            if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
                r.entries_.push_back(*ia++);
            } else if (ia == a.entries_.end() || ib->first < ia->first) {
                r.entries_.push_back(*ib++);
            } else {
                auto e = detail::checked_exp(std::int64_t{ia->second} + ib->second);
                if (e != 0) r.entries_.emplace_back(ia->first, e);
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    Monomial pow(std::int64_t k) const {
        Monomial r;
        if (k == 0) return r;
        for (auto& [v, e] : entries_) r.entries_.emplace_back(v, detail::checked_exp(std::int64_t{e} * k));
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.entries_ == b.entries_; }

    // Lexicographic on dense exponent vectors under the variable order, absent = 0.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        auto ia = a.entries_.begin(), ib = b.entries_.begin();
        while (ia != a.entries_.end() || ib != b.entries_.end()) {
            std::int32_t ea, eb;
            if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
                ea = ia->second;
                eb = 0;
                ++ia;
            } else if (ia == a.entries_.end() || ib->first < ia->first) {
                ea = 0;
                eb = ib->second;
                ++ib;
            } else {
                ea = ia->second;
                eb = ib->second;
                ++ia;
                ++ib;
            }
            if (ea != eb) return ea < eb;
        }
        return false;
    }

    std::string str() const {
        if (entries_.empty()) return "1";
        std::string s;
        for (auto& [v, e] : entries_) {
            if (!s.empty()) s += "*";
            s += v.name();
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<Entry> entries_;  // sorted by VarId, no zero exponents
};

// ---------------------------------------------------------------- polynomials

struct TermKey {
    Monomial mono;
    std::int32_t q = 0;
    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (a.mono < b.mono) return true;
        if (b.mono < a.mono) return false;
        return a.q < b.q;
    }
    friend bool operator==(const TermKey& a, const TermKey& b) { return a.q == b.q && a.mono == b.mono; }
};

// Coefficients are rationals times q^k where q stands for p^{1/2}; the q
// exponent is part of the term key so q + 1 is two terms.
class LaurentPoly {
public:
    using TermMap = std::map<TermKey, Rational>;

    LaurentPoly() = default;
    LaurentPoly(Rational c) {  // NOLINT: constants convert implicitly
        if (!c.is_zero()) terms_.emplace(TermKey{}, c);
    }
    static LaurentPoly term(Rational c, std::int64_t q, Monomial m) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms_.emplace(TermKey{std::move(m), detail::checked_exp(q)}, c);
        return p;
    }
    static LaurentPoly monomial(Monomial m) { return term(1, 0, std::move(m)); }
    static LaurentPoly var(VarId v, std::int64_t e = 1) { return monomial(Monomial({{v, e}})); }
    static LaurentPoly q_power(std::int64_t k) { return term(1, k, Monomial{}); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const TermKey& k, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_)
                r.add_term(TermKey{ka.mono * kb.mono, detail::checked_exp(std::int64_t{ka.q} + kb.q)}, ca * cb);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative power of a polynomial");
        LaurentPoly r(1);
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    std::set<VarId> variables() const {
        std::set<VarId> s;
        for (auto& [k, c] : terms_)
            for (auto& [v, e] : k.mono.entries()) s.insert(v);
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : terms_) {
            Rational a = c;
            if (!first) {
                os << (a.sign() < 0 ? " - " : " + ");
                if (a.sign() < 0) a = -a;
            }
            first = false;
            bool unit = a == Rational(1) || a == Rational(-1);
            if (!unit || (k.q == 0 && k.mono.is_one())) os << a;
            else if (a.sign() < 0) os << "-";
            bool need_star = !unit;
            if (k.q != 0) {
                os << (need_star ? "*" : "") << "q";
                if (k.q != 1) os << "^" << k.q;
                need_star = true;
            }
            if (!k.mono.is_one()) os << (need_star ? "*" : "") << k.mono.str();
        }
        return os.str();
    }

private:
    TermMap terms_;
};

inline LaurentPoly make_monomial(const std::map<VarId, std::int64_t>& exps) {
    return LaurentPoly::monomial(Monomial(exps));
}

// ---------------------------------------------------------------- substitution

// sign * q^q * mono
struct SignedMonomial {
    int sign = 1;
    std::int32_t q = 0;
    Monomial mono;

    static SignedMonomial of(VarId v, std::int64_t e = 1, int sign = 1) {
        return {sign, 0, Monomial({{v, e}})};
    }
    static SignedMonomial one() { return {}; }

    SignedMonomial pow(std::int64_t k) const {
        return {(sign < 0 && (k % 2 != 0)) ? -1 : 1, detail::checked_exp(std::int64_t{q} * k), mono.pow(k)};
    }
    friend SignedMonomial operator*(const SignedMonomial& a, const SignedMonomial& b) {
        return {a.sign * b.sign, detail::checked_exp(std::int64_t{a.q} + b.q), a.mono * b.mono};
    }
    friend bool operator==(const SignedMonomial&, const SignedMonomial&) = default;
    LaurentPoly poly() const { return LaurentPoly::term(sign, q, mono); }
};

using Substitution = std::map<VarId, SignedMonomial>;

inline LaurentPoly substitute(const LaurentPoly& f, const Substitution& map) {
    LaurentPoly r;
    for (auto& [k, c] : f.terms()) {
        SignedMonomial acc{1, k.q, Monomial{}};
        for (auto& [v, e] : k.mono.entries()) {
            auto it = map.find(v);
            if (it == map.end()) throw std::invalid_argument("substitute: no image for variable " + v.name());
            acc = acc * it->second.pow(e);
        }
        r.add_term(TermKey{acc.mono, acc.q}, acc.sign < 0 ? -c : c);
    }
    return r;
}

inline std::string substitution_str(const Substitution& s) {
    std::string out;
    for (auto& [v, img] : s) {
        if (!out.empty()) out += ", ";
        out += v.name() + " -> " + img.poly().str();
    }
    return out;
}

// ---------------------------------------------------------------- Weyl actions

// Shape of a Satake torus: block sizes n_i (0 allowed for GU*(0) factors) and
// whether the torus is split over the base field. An inert torus has q_i = n_i/2
// variables per block and a global similitude variable that is X' when every
// block is even and the invariant X otherwise.
struct TorusLayout {
    std::vector<int> sizes;
    bool split = true;

    int r() const { return static_cast<int>(sizes.size()); }
    int n(int i) const { return sizes.at(static_cast<std::size_t>(i - 1)); }
    int q(int i) const { return n(i) / 2; }
    int torus_count(int i) const { return split ? n(i) : q(i); }
    bool all_even() const {
        return std::all_of(sizes.begin(), sizes.end(), [](int v) { return v % 2 == 0; });
    }
    std::vector<VarId> variables() const {
        std::vector<VarId> vs{VarId::sim()};
        for (int i = 1; i <= r(); ++i)
            for (int j = 1; j <= torus_count(i); ++j) vs.push_back(VarId::tor(i, j));
        return vs;
    }
    friend bool operator==(const TorusLayout&, const TorusLayout&) = default;
};

// One permutation of {0..n_i-1} per block. In an inert layout the permutation
// must commute with k -> n_i-1-k, which identifies it with a signed permutation
// of the q_i torus variables.
class WeylElement {
public:
    WeylElement() = default;
    WeylElement(std::vector<Perm> perms, bool inert) : perms_(std::move(perms)), inert_(inert) {
        for (auto& p : perms_) {
            if (!is_permutation_vector(p)) throw std::invalid_argument("WeylElement: not a permutation");
            if (inert_) {
                int n = static_cast<int>(p.size());
                for (int k = 0; k < n; ++k)
                    if (p[static_cast<std::size_t>(n - 1 - k)] != n - 1 - p[static_cast<std::size_t>(k)])
                        throw std::invalid_argument("WeylElement: inert permutation does not preserve pairs");
            }
        }
    }

    static WeylElement identity(const TorusLayout& L) {
        std::vector<Perm> ps;
        for (int v : L.sizes) ps.push_back(identity_perm(v));
        return {ps, !L.split};
    }

    // Split block from a permutation sigma of {1..n_i} given 0-based.
    // Inert block from (sigma on {0..q-1}, eps indexed by target position):
    // X_j -> X_{sigma(j)}^{eps_{sigma(j)}}.
    static Perm inert_block(int n, const Perm& sigma, const std::vector<int>& eps) {
        int q = n / 2;
        if (static_cast<int>(sigma.size()) != q || static_cast<int>(eps.size()) != q)
            throw std::invalid_argument("inert_block: size mismatch");
        Perm p = identity_perm(n);
        for (int k = 0; k < q; ++k) {
            int t = sigma[static_cast<std::size_t>(k)];
            int img = eps[static_cast<std::size_t>(t)] > 0 ? t : n - 1 - t;
            p[static_cast<std::size_t>(k)] = img;
            p[static_cast<std::size_t>(n - 1 - k)] = n - 1 - img;
        }
        return p;
    }

    std::pair<Perm, std::vector<int>> signed_form(int i) const {
        const Perm& p = perms_.at(static_cast<std::size_t>(i - 1));
        int n = static_cast<int>(p.size()), q = n / 2;
        Perm sigma(static_cast<std::size_t>(q));
        std::vector<int> eps(static_cast<std::size_t>(q), 1);
        for (int k = 0; k < q; ++k) {
            int img = p[static_cast<std::size_t>(k)];
            int t = std::min(img, n - 1 - img);
            sigma[static_cast<std::size_t>(k)] = t;
            eps[static_cast<std::size_t>(t)] = img < q ? 1 : -1;
        }
        return {sigma, eps};
    }

    const std::vector<Perm>& perms() const { return perms_; }
    bool inert() const { return inert_; }

    friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
        if (a.perms_.size() != b.perms_.size() || a.inert_ != b.inert_)
            throw ContextError("WeylElement product: incompatible elements");
        std::vector<Perm> ps;
        for (std::size_t i = 0; i < a.perms_.size(); ++i) ps.push_back(compose(a.perms_[i], b.perms_[i]));
        return {ps, a.inert_};
    }
    WeylElement inverse() const {
        std::vector<Perm> ps;
        for (auto& p : perms_) ps.push_back(stabkit::inverse(p));
        return {ps, inert_};
    }
    friend bool operator==(const WeylElement&, const WeylElement&) = default;
    friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.perms_ < b.perms_; }

private:
    std::vector<Perm> perms_;
    bool inert_ = false;
};

namespace detail {

inline void check_compatible(const WeylElement& w, const TorusLayout& L) {
    if (w.inert() == L.split || static_cast<int>(w.perms().size()) != L.r())
        throw ContextError("group_act: Weyl element does not match the torus layout");
    for (int i = 1; i <= L.r(); ++i)
        if (static_cast<int>(w.perms()[static_cast<std::size_t>(i - 1)].size()) != L.n(i))
            throw ContextError("group_act: block size mismatch");
}

inline Monomial act_on_monomial(const WeylElement& w, const Monomial& m, const TorusLayout& L) {
    std::map<VarId, std::int64_t> out;
    for (auto& [v, e] : m.entries()) {
        if (v.kind == VarKind::Tor) {
            if (v.i < 1 || v.i > L.r() || v.j < 1 || v.j > L.torus_count(v.i))
                throw ContextError("group_act: variable " + v.name() + " outside the layout");
        } else {
            out[v] += e;
        }
    }
    bool all_even = L.all_even();
    for (int i = 1; i <= L.r(); ++i) {
        const Perm& p = w.perms()[static_cast<std::size_t>(i - 1)];
        int n = L.n(i);
        if (L.split) {
            for (int j = 1; j <= n; ++j) {
                std::int64_t e = m.exp(VarId::tor(i, j));
                if (e != 0) out[VarId::tor(i, p[static_cast<std::size_t>(j - 1)] + 1)] += e;
            }
            continue;
        }
        // Inert: embed c*X'_i + sum e_k X_{i,k} into Z^{n_i} and permute.
        int q = n / 2;
        std::int64_t c = 0;
        if (all_even) c += m.exp(VarId::sim());
        if (n % 2 == 0) c += m.exp(VarId::sim_factor(i));
        std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0), vp(static_cast<std::size_t>(n), 0);
        for (int k = 0; k < q; ++k) {
            std::int64_t e = m.exp(VarId::tor(i, k + 1));
            v[static_cast<std::size_t>(k)] = c + e;
            v[static_cast<std::size_t>(n - 1 - k)] = -e;
        }
        for (int k = 0; k < n; ++k) vp[static_cast<std::size_t>(p[static_cast<std::size_t>(k)])] = v[static_cast<std::size_t>(k)];
        for (int k = 0; k < q; ++k) {
            std::int64_t e = -vp[static_cast<std::size_t>(n - 1 - k)];
            if (e != 0) out[VarId::tor(i, k + 1)] += e;
        }
    }
    return Monomial(out);
}

}  // namespace detail

inline LaurentPoly group_act(const WeylElement& w, const LaurentPoly& f, const TorusLayout& L) {
    detail::check_compatible(w, L);
    LaurentPoly r;
    for (auto& [k, c] : f.terms()) r.add_term(TermKey{detail::act_on_monomial(w, k.mono, L), k.q}, c);
    return r;
}

// Every element of prod S_{n_i} (split) or prod {+-1}^{q_i} x| S_{q_i} (inert).
inline std::vector<WeylElement> enumerate_weyl_group(const TorusLayout& L) {
    std::vector<std::vector<Perm>> per_block;
    for (int i = 1; i <= L.r(); ++i) {
        int n = L.n(i);
        std::vector<Perm> blk;
        if (L.split) {
            blk = all_permutations(n);
        } else {
            int q = n / 2;
            for (auto& sigma : all_permutations(q))
                for (int mask = 0; mask < (1 << q); ++mask) {
                    std::vector<int> eps(static_cast<std::size_t>(q));
                    for (int t = 0; t < q; ++t) eps[static_cast<std::size_t>(t)] = (mask >> t) & 1 ? -1 : 1;
                    blk.push_back(WeylElement::inert_block(n, sigma, eps));
                }
        }
        per_block.push_back(std::move(blk));
    }
    std::vector<WeylElement> out;
    std::vector<Perm> cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == per_block.size()) {
            out.emplace_back(cur, !L.split);
            return;
        }
        for (auto& p : per_block[i]) {
            cur.push_back(p);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Adjacent transpositions per block, plus one sign change per inert block.
inline std::vector<WeylElement> weyl_generators(const TorusLayout& L) {
    std::vector<WeylElement> gens;
    WeylElement id = WeylElement::identity(L);
    for (int i = 1; i <= L.r(); ++i) {
        int n = L.n(i);
        int m = L.split ? n : n / 2;
        for (int k = 0; k + 1 < m; ++k) {
            auto ps = id.perms();
            if (L.split) {
                std::swap(ps[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)],
                          ps[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k + 1)]);
            } else {
                Perm sigma = identity_perm(m);
                std::swap(sigma[static_cast<std::size_t>(k)], sigma[static_cast<std::size_t>(k + 1)]);
                ps[static_cast<std::size_t>(i - 1)] = WeylElement::inert_block(n, sigma, std::vector<int>(static_cast<std::size_t>(m), 1));
            }
            gens.emplace_back(ps, !L.split);
        }
        if (!L.split && m >= 1) {
            auto ps = id.perms();
            std::vector<int> eps(static_cast<std::size_t>(m), 1);
            eps.back() = -1;
            ps[static_cast<std::size_t>(i - 1)] = WeylElement::inert_block(n, identity_perm(m), eps);
            gens.emplace_back(ps, true);
        }
    }
    return gens;
}

// Orbit sum: each distinct image of each term appears once with that term's coefficient.
inline LaurentPoly symmetrize(const LaurentPoly& f, const std::vector<WeylElement>& group, const TorusLayout& L) {
    for (auto& w : group) detail::check_compatible(w, L);
    LaurentPoly r;
    for (auto& [k, c] : f.terms()) {
        std::set<Monomial, std::less<>> orbit;
        for (auto& w : group) orbit.insert(detail::act_on_monomial(w, k.mono, L));
        for (auto& m : orbit) r.add_term(TermKey{m, k.q}, c);
    }
    return r;
}

inline bool is_invariant(const LaurentPoly& f, const std::vector<WeylElement>& group, const TorusLayout& L) {
    for (auto& w : group)
        if (!(group_act(w, f, L) == f)) return false;
    return true;
}

// ---------------------------------------------------------------- evaluation and division

inline Rational evaluate(const LaurentPoly& f, const std::map<VarId, Rational>& values,
                         std::optional<Rational> q_value = std::nullopt) {
    Rational total;
    for (auto& [k, c] : f.terms()) {
        Rational t = c;
        if (k.q != 0) {
            if (!q_value) throw std::invalid_argument("evaluate: q value required");
            t *= pow_int(*q_value, k.q);
        }
        for (auto& [v, e] : k.mono.entries()) {
            auto it = values.find(v);
            if (it == values.end()) throw std::invalid_argument("evaluate: no value for " + v.name());
            t *= pow_int(it->second, e);
        }
        total += t;
    }
    return total;
}

// Exact division of polynomials with nonnegative exponents and no q, by the
// lexicographic division algorithm. Throws if the division leaves a remainder.
inline LaurentPoly divide_exact(LaurentPoly num, const LaurentPoly& den) {
    auto check = [](const LaurentPoly& p) {
        for (auto& [k, c] : p.terms()) {
            if (k.q != 0) throw std::invalid_argument("divide_exact: q powers not supported");
            for (auto& [v, e] : k.mono.entries())
                if (e < 0) throw std::invalid_argument("divide_exact: negative exponent");
        }
    };
    check(num);
    check(den);
    if (den.is_zero()) throw std::domain_error("divide_exact: zero divisor");
    auto lead_d = std::prev(den.terms().end());
    LaurentPoly quot;
    while (!num.is_zero()) {
        auto lead_n = std::prev(num.terms().end());
        Monomial t = lead_n->first.mono * lead_d->first.mono.pow(-1);
        for (auto& [v, e] : t.entries())
            if (e < 0) throw std::domain_error("divide_exact: division is not exact");
        LaurentPoly step = LaurentPoly::term(lead_n->second / lead_d->second, 0, t);
        quot += step;
        num -= step * den;
    }
    return quot;
}

}  // namespace stabkit

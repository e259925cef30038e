#pragma once

// The two genericity conditions: non-resonance (no two exponents at one
// point differ by an integer) and the no-integer-sums condition on partial
// exponent selections across all points.
//
// Non-resonance is decided without root extraction: chi and chi(. + k)
// share a root iff two eigenvalues differ by exactly k, so a gcd scan over
// k = 0..K with K twice the Cauchy root bound is complete. The sum
// condition is exact when all exponents are rational; otherwise a certified
// interval mode over real roots is used, with "undecided" as an error
// outcome rather than a silent pass.

#include "fuchs/polynomial.hpp"
#include "fuchs/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fuchs {

namespace detail {

/// K = ceil(2 * max(1, sum |c_i| / |lead|)); root differences cannot exceed
/// twice the Cauchy root bound.
inline long integer_shift_bound(const Polynomial &chi) {
    Rational s(0);
    for (long i = 0; i < chi.degree(); ++i) s += chi.coeff((std::size_t)i).abs();
    s /= chi.lead().abs();
    if (s < Rational(1)) s = Rational(1);
    return (long)mpz_get_si((Rational(2) * s).ceil().get_mpz_t());
}

} // namespace detail

struct ResonanceWitness {
    std::size_t point_index;   // 0..n-1 finite, n = infinity (table position)
    long shift;                // the integer difference found
    std::optional<std::pair<Rational, Rational>> pair; // concrete pair when exponents split
};

/// Per-point non-resonance. k = 0 is the distinctness check (square-free
/// char poly); k >= 1 scans gcd(chi(x), chi(x+k)).
inline std::vector<bool> check_nonresonance(const ExponentTable &t,
                                            std::vector<ResonanceWitness> *witnesses = nullptr) {
    std::vector<bool> ok;
    for (std::size_t pi = 0; pi < t.points(); ++pi) {
        const Polynomial &chi = t.residues[pi].char_poly;
        bool point_ok = true;
        auto record = [&](long k) {
            point_ok = false;
            if (!witnesses) return;
            ResonanceWitness w;
            w.point_index = pi;
            w.shift = k;
            if (t.residues[pi].splits()) {
                const auto &ex = *t.residues[pi].exponents;
                for (std::size_t a = 0; a < ex.size() && !w.pair; ++a)
                    for (std::size_t b = 0; b < ex.size(); ++b) {
                        if (a == b && k != 0) continue;
                        if (a >= b && k == 0) continue;
                        if (ex[a] - ex[b] == Rational(k)) {
                            w.pair = std::make_pair(ex[b], ex[a]);
                            break;
                        }
                    }
            }
            witnesses->push_back(std::move(w));
        };
        if (Polynomial::gcd(chi, chi.derivative()).degree() > 0) record(0);
        const long bound = detail::integer_shift_bound(chi);
        for (long k = 1; k <= bound; ++k)
            if (Polynomial::gcd(chi, chi.shift(Rational(k))).degree() > 0) record(k);
        ok.push_back(point_ok);
    }
    return ok;
}

struct SumWitness {
    std::size_t size;                                 // k, the selection size
    Rational total;                                   // the offending integer sum
    std::vector<std::vector<Rational>> selection;     // chosen exponents per point
};

namespace detail {

struct SumSet {
    // achievable sum -> one representative selection (per point, in order)
    std::map<Rational, std::vector<std::vector<Rational>>> sums;
};

/// Sums of all size-k subsets of the exponent multiset at one point.
inline std::map<Rational, std::vector<Rational>> point_subset_sums(
    const std::vector<Rational> &exps, std::size_t k) {
    std::map<Rational, std::vector<Rational>> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > exps.size()) return out;
    while (true) {
        Rational s(0);
        std::vector<Rational> sel;
        for (auto i : idx) {
            s += exps[i];
            sel.push_back(exps[i]);
        }
        out.emplace(s, std::move(sel));
        // next combination
        long pos = (long)k - 1;
        while (pos >= 0 && idx[(std::size_t)pos] == exps.size() - k + (std::size_t)pos) --pos;
        if (pos < 0) break;
        ++idx[(std::size_t)pos];
        for (std::size_t i = (std::size_t)pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

} // namespace detail

/// Exact decision of the no-integer-sums condition for rational exponent
/// tables. Selection sizes run over 1..m-1 (k distinct indices at every
/// point), matching the invariant-subbundle reading: a proper D-invariant
/// subbundle of rank k would make such a sum equal minus its degree.
inline bool check_no_integer_sums_exact(const ExponentTable &t, std::size_t m,
                                        std::optional<SumWitness> *witness = nullptr) {
    if (!t.all_split())
        throw std::invalid_argument("exact mode requires rational exponents at every point");
    for (std::size_t k = 1; k + 1 <= m; ++k) {
        // fold the per-point achievable-sum sets pairwise, memoized on sums
        detail::SumSet acc;
        acc.sums[Rational(0)] = {};
        for (std::size_t pi = 0; pi < t.points(); ++pi) {
            const auto point = detail::point_subset_sums(*t.residues[pi].exponents, k);
            detail::SumSet next;
            for (const auto &[s0, sel0] : acc.sums)
                for (const auto &[s1, sel1] : point) {
                    const Rational s = s0 + s1;
                    if (next.sums.count(s)) continue;
                    auto sel = sel0;
                    sel.push_back(sel1);
                    next.sums.emplace(s, std::move(sel));
                }
            acc = std::move(next);
        }
        for (const auto &[s, sel] : acc.sums) {
            if (!s.is_integer()) continue;
            if (witness) *witness = SumWitness{k, s, sel};
            return false;
        }
    }
    return true;
}

// ---- interval mode ----------------------------------------------------

namespace detail {

/// Number of distinct real roots of square-free p in (a, b], by Sturm chains.
class SturmChain {
public:
    explicit SturmChain(const Polynomial &p) {
        chain_.push_back(p);
        chain_.push_back(p.derivative());
        while (!chain_.back().is_zero() && chain_.back().degree() > 0)
            chain_.push_back(-(chain_[chain_.size() - 2] % chain_.back()));
        if (chain_.back().is_zero()) chain_.pop_back();
    }

    int sign_changes(const Rational &x) const {
        int changes = 0, prev = 0;
        for (const auto &q : chain_) {
            const int s = q(x).sign();
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }

    long roots_in(const Rational &a, const Rational &b) const {
        return sign_changes(a) - sign_changes(b);
    }

private:
    std::vector<Polynomial> chain_;
};

struct RootInterval {
    Rational lo, hi; // contains exactly one real root; may be degenerate (exact)
    bool exact() const { return lo == hi; }
};

/// Isolating intervals for all real roots of square-free p, refined to
/// width <= 2^-bits. Returns nullopt when p has non-real roots (real root
/// count below the degree).
inline std::optional<std::vector<RootInterval>> isolate_real_roots(const Polynomial &p,
                                                                   unsigned bits) {
    const Polynomial q = (p / Polynomial::gcd(p, p.derivative())).monic();
    SturmChain sturm(q);
    const Rational bound = [&] {
        Rational s(1);
        for (long i = 0; i < q.degree(); ++i) {
            const Rational c = q.coeff((std::size_t)i).abs() / q.lead().abs();
            if (c + Rational(1) > s) s = c + Rational(1);
        }
        return s;
    }();
    if (sturm.roots_in(-bound, bound) != q.degree()) return std::nullopt;
    Rational width_target(Integer(1), [&] {
        Integer d = 1;
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
        return d;
    }());
    std::vector<RootInterval> done;
    std::vector<RootInterval> work{{-bound, bound}};
    while (!work.empty()) {
        RootInterval iv = work.back();
        work.pop_back();
        const long count = sturm.roots_in(iv.lo, iv.hi);
        if (count == 0) continue;
        if (count == 1 && iv.hi - iv.lo <= width_target) {
            done.push_back(iv);
            continue;
        }
        const Rational mid = (iv.lo + iv.hi) / Rational(2);
        if (q(mid).is_zero()) {
            done.push_back({mid, mid});
            // shrink the excluded neighborhood until it contains mid only
            Rational eps = (iv.hi - iv.lo) / Rational(4);
            while (sturm.roots_in(mid - eps, mid + eps) != 1) eps /= Rational(2);
            work.push_back({iv.lo, mid - eps});
            work.push_back({mid + eps, iv.hi});
            continue;
        }
        work.push_back({iv.lo, mid});
        work.push_back({mid, iv.hi});
    }
    if ((long)done.size() != q.degree()) return std::nullopt; // multiplicities folded by sqfree part: recount below
    std::sort(done.begin(), done.end(),
              [](const RootInterval &a, const RootInterval &b) { return a.lo < b.lo; });
    return done;
}

} // namespace detail

enum class TriState { yes, no, undecided };

/// Certified interval decision of the sum condition when some exponents are
/// irrational. Requires every char poly to have all-real roots; complex
/// exponents are reported undecided. The precision ladder doubles up to
/// max_bits; any sum interval still containing an integer at the cap yields
/// "undecided", never a pass.
inline TriState check_no_integer_sums_interval(const ExponentTable &t, std::size_t m,
                                               unsigned max_bits, std::string *reason = nullptr) {
    for (unsigned bits = 32; bits <= max_bits; bits *= 2) {
        std::vector<std::vector<detail::RootInterval>> roots;
        for (const auto &r : t.residues) {
            if (Polynomial::gcd(r.char_poly, r.char_poly.derivative()).degree() > 0) {
                if (reason) *reason = "repeated exponents; interval mode requires square-free char polys";
                return TriState::undecided;
            }
            auto iv = detail::isolate_real_roots(r.char_poly, bits);
            if (!iv) {
                if (reason) *reason = "non-real exponents; interval mode covers real roots only";
                return TriState::undecided;
            }
            roots.push_back(std::move(*iv));
        }
        bool all_separated = true;
        for (std::size_t k = 1; k + 1 <= m; ++k) {
            // per-point subset sums as intervals, then fold
            std::vector<std::pair<Rational, Rational>> acc{{Rational(0), Rational(0)}};
            for (const auto &pt : roots) {
                std::vector<std::pair<Rational, Rational>> point;
                std::vector<std::size_t> idx(k);
                for (std::size_t i = 0; i < k; ++i) idx[i] = i;
                if (k > pt.size()) break;
                while (true) {
                    Rational lo(0), hi(0);
                    for (auto i : idx) {
                        lo += pt[i].lo;
                        hi += pt[i].hi;
                    }
                    point.push_back({lo, hi});
                    long pos = (long)k - 1;
                    while (pos >= 0 && idx[(std::size_t)pos] == pt.size() - k + (std::size_t)pos) --pos;
                    if (pos < 0) break;
                    ++idx[(std::size_t)pos];
                    for (std::size_t i = (std::size_t)pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
                }
                std::vector<std::pair<Rational, Rational>> next;
                for (const auto &a : acc)
                    for (const auto &b : point)
                        next.push_back({a.first + b.first, a.second + b.second});
                std::sort(next.begin(), next.end());
                next.erase(std::unique(next.begin(), next.end()), next.end());
                acc = std::move(next);
            }
            for (const auto &[lo, hi] : acc)
                if (hi.floor() >= lo.ceil()) all_separated = false; // an integer sits inside [lo, hi]
        }
        if (all_separated) return TriState::yes;
    }
    if (reason) *reason = "undecidable at precision cap";
    return TriState::undecided;
}

struct GenericityReport {
    std::vector<bool> nonresonant;        // per table point
    TriState integer_sum_free = TriState::undecided;
    std::vector<ResonanceWitness> resonance_witnesses;
    std::optional<SumWitness> sum_witness;
    std::string mode;                     // "exact" or "interval(<bits>)"
    std::string undecided_reason;

    bool all_nonresonant() const {
        for (bool b : nonresonant)
            if (!b) return false;
        return true;
    }
    bool generic() const { return all_nonresonant() && integer_sum_free == TriState::yes; }
    bool undecided() const { return integer_sum_free == TriState::undecided; }
    // informational consequences of the two conditions
    bool residues_regular_semisimple() const { return all_nonresonant(); }
    bool irreducible() const { return integer_sum_free == TriState::yes; }
};

inline GenericityReport genericity_report(const ExponentTable &t, std::size_t m,
                                          unsigned max_bits = 256) {
    GenericityReport rep;
    rep.nonresonant = check_nonresonance(t, &rep.resonance_witnesses);
    if (t.all_split()) {
        rep.mode = "exact";
        rep.integer_sum_free =
            check_no_integer_sums_exact(t, m, &rep.sum_witness) ? TriState::yes : TriState::no;
    } else {
        rep.mode = "interval(" + std::to_string(max_bits) + ")";
        rep.integer_sum_free = check_no_integer_sums_interval(t, m, max_bits, &rep.undecided_reason);
    }
    return rep;
}

inline GenericityReport genericity_report(const FuchsianOperator &op, unsigned max_bits = 256) {
    return genericity_report(exponent_table(op), op.m, max_bits);
}

inline nlohmann::json genericity_to_json(const GenericityReport &r) {
    nlohmann::json j;
    j["nonresonant"] = r.nonresonant;
    j["integer_sum_free"] = r.integer_sum_free == TriState::yes   ? "true"
                            : r.integer_sum_free == TriState::no ? "false"
                                                                 : "undecided";
    j["generic"] = r.generic();
    j["mode"] = r.mode;
    j["residues_regular_semisimple"] = r.residues_regular_semisimple();
    j["irreducible"] = r.irreducible();
    nlohmann::json rw = nlohmann::json::array();
    for (const auto &w : r.resonance_witnesses) {
        nlohmann::json e;
        e["point_index"] = w.point_index;
        e["shift"] = w.shift;
        if (w.pair) e["pair"] = {w.pair->first.str(), w.pair->second.str()};
        rw.push_back(e);
    }
    j["resonance_witnesses"] = rw;
    if (r.sum_witness) {
        nlohmann::json sw;
        sw["k"] = r.sum_witness->size;
        sw["sum"] = r.sum_witness->total.str();
        nlohmann::json sel = nlohmann::json::array();
        for (const auto &pt : r.sum_witness->selection) {
            nlohmann::json p = nlohmann::json::array();
            for (const auto &x : pt) p.push_back(x.str());
            sel.push_back(p);
        }
        sw["selection"] = sel;
        j["sum_witness"] = sw;
    }
    if (!r.undecided_reason.empty()) j["undecided_reason"] = r.undecided_reason;
    return j;
}

} // namespace fuchs

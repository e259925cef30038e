#pragma once

// The all-in-one verification report: runs the full pipeline on one
// operator, records a pass/fail/skipped verdict per checked statement, and
// maps the outcome to the process exit code. Deterministic for a given
// input.

#include "fuchs/cohomology.hpp"
#include "fuchs/connection.hpp"
#include "fuchs/deformation.hpp"
#include "fuchs/gauge.hpp"
#include "fuchs/genericity.hpp"
#include "fuchs/operator.hpp"
#include "fuchs/parabolic.hpp"
#include "fuchs/spectral.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fuchs {

// exit codes shared by all CLI commands
enum ExitCode : int {
    exit_ok = 0,
    exit_invalid = 1,
    exit_not_generic = 2,
    exit_parse_error = 3,
    exit_undecided = 4,
    exit_inconsistent = 5,
};

enum class Verdict { pass, fail, skipped };

struct ReportEntry {
    std::string statement;
    Verdict verdict;
    std::string reason; // populated for fail/skipped
};

struct ReportOptions {
    unsigned max_bits = 256;
    std::map<std::size_t, std::vector<std::size_t>> orderings; // per table point
};

struct Report {
    nlohmann::json body;
    std::vector<ReportEntry> entries;
    int exit_code = exit_ok;

    void add(std::string statement, bool ok, std::string reason = "") {
        entries.push_back({std::move(statement), ok ? Verdict::pass : Verdict::fail,
                           ok ? std::string() : std::move(reason)});
    }
    void skip(std::string statement, std::string reason) {
        entries.push_back({std::move(statement), Verdict::skipped, std::move(reason)});
    }
};

inline nlohmann::json verdicts_to_json(const std::vector<ReportEntry> &entries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &e : entries) {
        nlohmann::json v;
        v["statement"] = e.statement;
        v["verdict"] = e.verdict == Verdict::pass   ? "pass"
                       : e.verdict == Verdict::fail ? "fail"
                                                    : "skipped";
        if (!e.reason.empty()) v["reason"] = e.reason;
        arr.push_back(v);
    }
    return arr;
}

inline nlohmann::json validation_to_json(const ValidationReport &v) {
    nlohmann::json j;
    j["accepted"] = v.accepted;
    nlohmann::json viol = nlohmann::json::array();
    for (const auto &x : v.violations) viol.push_back(x.what);
    j["violations"] = viol;
    return j;
}

inline Report build_report(const FuchsianOperator &op, const ReportOptions &opt = {}) {
    Report rep;
    rep.body["version"] = 1;
    rep.body["operator"] = operator_to_json(op);

    const ValidationReport val = validate_fuchs(op);
    rep.body["validation"] = validation_to_json(val);
    rep.add("operator satisfies the regularity degree bounds", val.accepted,
            val.accepted ? "" : "validation failed");
    if (!val.accepted) {
        rep.body["verdicts"] = verdicts_to_json(rep.entries);
        rep.exit_code = exit_invalid;
        rep.body["exit_code"] = rep.exit_code;
        return rep;
    }

    ExponentTable table = exponent_table(op);
    for (const auto &[pi, perm] : opt.orderings) apply_ordering(table, pi, perm);
    rep.body["exponents"] = exponent_table_to_json(table);

    const GlobalChecksReport gc = global_checks(table, op.m, op.n(), bundle_degree(op.m, op.n()));
    rep.body["global_checks"] = {{"exponent_sum", gc.exponent_sum.str()},
                                 {"fuchs_required", gc.fuchs_required.str()},
                                 {"degree", gc.degree},
                                 {"fuchs_relation", gc.fuchs_relation_holds},
                                 {"residue_theorem", gc.residue_theorem_holds}};
    rep.add("exponent sum matches the global relation", gc.fuchs_relation_holds,
            "sum = " + gc.exponent_sum.str());
    rep.add("residue traces sum to minus the bundle degree", gc.residue_theorem_holds,
            "sum = " + gc.exponent_sum.str());

    bool log_at_inf = true;
    std::string log_reason;
    try {
        (void)infinity_connection_matrix(op);
    } catch (const std::logic_error &e) {
        log_at_inf = false;
        log_reason = e.what();
    }
    rep.add("connection is logarithmic at infinity", log_at_inf, log_reason);

    const GenericityReport gen = genericity_report(table, op.m, opt.max_bits);
    rep.body["genericity"] = genericity_to_json(gen);
    rep.add("no two exponents at a point differ by an integer", gen.all_nonresonant(),
            "resonance witness recorded");
    if (gen.undecided())
        rep.skip("no exponent selection sums to an integer", gen.undecided_reason);
    else
        rep.add("no exponent selection sums to an integer", gen.irreducible(),
                "sum witness recorded");

    const Dims d = dims(op.m, op.n());
    rep.body["dims"] = {{"e", d.e}, {"c", d.c}, {"rigid", d.rigid}};
    rep.add("dimension count is even (c = 2e)", d.c == 2 * d.e, "");

    const DeformationBasis tb = isomonodromic_tangent_basis(op);
    rep.body["tangent"] = tangent_to_json(tb);
    if (gen.generic())
        rep.add("tangent space of the deformation family has dimension e", tb.matches_expected(),
                "dimension " + std::to_string(tb.dimension));
    else
        rep.skip("tangent space of the deformation family has dimension e",
                 "operator not established generic");

    bool ledger_ok = true;
    if (gen.generic() && table.all_split()) {
        try {
            const ParabolicData par = flags(op, table);
            rep.body["parabolic"] = parabolic_to_json(par);
            rep.add("parabolic weights are generic",
                    [&] {
                        std::vector<std::vector<Rational>> w;
                        for (const auto &f : par.flags) w.push_back(f.weights);
                        return weights_generic(w);
                    }(),
                    "");
            const SequenceLedger led = sequence_ledger(op, par);
            rep.body["ledger"] = ledger_to_json(led);
            ledger_ok = led.consistent();
            rep.add("cohomology ledger is internally consistent", led.consistent(),
                    led.diagnostics.empty() ? "" : led.diagnostics.front());
            rep.add("cokernel dimension equals e", led.dim_C == d.e,
                    "dim_C = " + std::to_string(led.dim_C));
        } catch (const UnsupportedModeError &e) {
            rep.skip("cohomology ledger is internally consistent", e.what());
        }
        const GaugeSolution self = gauge_solve(op, op);
        rep.body["gauge_self"] = gauge_to_json(self, true);
        rep.add("self-intertwiners are exactly the scalars", self.dimension() == 1,
                "dimension " + std::to_string(self.dimension()));
    } else {
        rep.skip("cohomology ledger is internally consistent",
                 table.all_split() ? "operator not established generic"
                                   : "exponents not all rational");
        rep.skip("self-intertwiners are exactly the scalars", "operator not established generic");
    }

    rep.body["verdicts"] = verdicts_to_json(rep.entries);

    bool failed = false;
    for (const auto &e : rep.entries) failed = failed || (e.verdict == Verdict::fail);
    if (!ledger_ok)
        rep.exit_code = exit_inconsistent;
    else if (gen.integer_sum_free == TriState::no || !gen.all_nonresonant())
        rep.exit_code = exit_not_generic;
    else if (gen.undecided())
        rep.exit_code = exit_undecided;
    else if (failed)
        rep.exit_code = exit_inconsistent;
    rep.body["exit_code"] = rep.exit_code;
    return rep;
}

} // namespace fuchs

// Command-line surface. Every command reads operator JSON files, writes one
// JSON document to stdout, and signals its verdict through the exit code:
//   0 ok, 1 invalid operator, 2 not generic, 3 parse error,
//   4 undecided / unsupported exponent mode, 5 internal inconsistency.

#include "fuchs/cohomology.hpp"
#include "fuchs/connection.hpp"
#include "fuchs/deformation.hpp"
#include "fuchs/fuzz.hpp"
#include "fuchs/gauge.hpp"
#include "fuchs/genericity.hpp"
#include "fuchs/operator.hpp"
#include "fuchs/parabolic.hpp"
#include "fuchs/report.hpp"
#include "fuchs/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Output {
    bool pretty = false;
    void emit(const json &j) const { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }
    int fail(int code, const std::string &msg) const {
        emit(json{{"error", msg}, {"exit_code", code}});
        return code;
    }
};

fuchs::FuchsianOperator load(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw fuchs::ParseError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return fuchs::parse_operator(buf.str());
}

// "POINT:i,j,..." -> permutation of the ascending exponent list at POINT
void parse_orderings(const std::vector<std::string> &specs, fuchs::ReportOptions &opt) {
    for (const auto &s : specs) {
        const auto colon = s.find(':');
        if (colon == std::string::npos)
            throw fuchs::ParseError("--ordering expects POINT:i,j,... got '" + s + "'");
        const std::size_t point = std::stoul(s.substr(0, colon));
        std::vector<std::size_t> perm;
        std::stringstream items(s.substr(colon + 1));
        std::string tok;
        while (std::getline(items, tok, ',')) perm.push_back(std::stoul(tok));
        opt.orderings[point] = perm;
    }
}

int run_validated(const Output &out, const std::string &file,
                  const std::function<int(const Output &, const fuchs::FuchsianOperator &)> &body) {
    fuchs::FuchsianOperator op;
    try {
        op = load(file);
    } catch (const fuchs::ParseError &e) {
        return out.fail(fuchs::exit_parse_error, e.what());
    }
    const auto val = fuchs::validate_fuchs(op);
    if (!val.accepted) {
        json j = fuchs::validation_to_json(val);
        j["exit_code"] = fuchs::exit_invalid;
        out.emit(j);
        return fuchs::exit_invalid;
    }
    return body(out, op);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact verification of Fuchsian equations as logarithmic connections"};
    app.require_subcommand(1);

    Output out;
    fuchs::ReportOptions ropt;
    std::vector<std::string> ordering_specs;
    app.add_flag("--pretty", out.pretty, "indent the JSON output");
    app.add_option("--max-bits", ropt.max_bits, "interval-mode precision cap")
        ->envname("FUCHS_MAX_BITS");

    std::string file, file2;
    std::size_t m = 2, n = 3;
    std::uint64_t seed = 0;
    std::size_t count = 1;

    auto *c_check = app.add_subcommand("check", "validate and test genericity");
    c_check->add_option("file", file)->required();
    auto *c_exp = app.add_subcommand("exponents", "residues and exponent table");
    c_exp->add_option("file", file)->required();
    c_exp->add_option("--ordering", ordering_specs, "POINT:i,j,... exponent order override");
    auto *c_conn = app.add_subcommand("connection", "companion presentation and infinity chart");
    c_conn->add_option("file", file)->required();
    auto *c_dims = app.add_subcommand("dims", "moduli dimension formulas");
    c_dims->add_option("-m", m)->required();
    c_dims->add_option("-n", n)->required();
    auto *c_tan = app.add_subcommand("tangent", "isomonodromic tangent basis");
    c_tan->add_option("file", file)->required();
    auto *c_gauge = app.add_subcommand("gauge", "decide gauge equivalence of two operators");
    c_gauge->add_option("file1", file)->required();
    c_gauge->add_option("file2", file2)->required();
    auto *c_coh = app.add_subcommand("cohomology", "section spaces and the dimension ledger");
    c_coh->add_option("file", file)->required();
    auto *c_rep = app.add_subcommand("report", "full verification report");
    c_rep->add_option("file", file)->required();
    c_rep->add_option("--ordering", ordering_specs, "POINT:i,j,... exponent order override");
    auto *c_fuzz = app.add_subcommand("fuzz", "emit random generic operators");
    c_fuzz->add_option("-m", m);
    c_fuzz->add_option("-n", n);
    c_fuzz->add_option("--seed", seed);
    c_fuzz->add_option("--count", count);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_check))
            return run_validated(out, file, [&ropt](const Output &o, const fuchs::FuchsianOperator &op) {
                const auto rep = fuchs::genericity_report(op, ropt.max_bits);
                json j;
                j["validation"] = fuchs::validation_to_json(fuchs::validate_fuchs(op));
                j["genericity"] = fuchs::genericity_to_json(rep);
                const int code = rep.generic()     ? fuchs::exit_ok
                                 : rep.undecided() ? fuchs::exit_undecided
                                                   : fuchs::exit_not_generic;
                j["exit_code"] = code;
                o.emit(j);
                return code;
            });

        if (app.got_subcommand(c_exp)) {
            parse_orderings(ordering_specs, ropt);
            return run_validated(out, file, [&ropt](const Output &o, const fuchs::FuchsianOperator &op) {
                auto table = fuchs::exponent_table(op);
                for (const auto &[pi, perm] : ropt.orderings) fuchs::apply_ordering(table, pi, perm);
                json j;
                j["exponents"] = fuchs::exponent_table_to_json(table);
                const auto gc = fuchs::global_checks(table, op.m, op.n(),
                                                     fuchs::bundle_degree(op.m, op.n()));
                j["global_checks"] = {{"exponent_sum", gc.exponent_sum.str()},
                                      {"fuchs_required", gc.fuchs_required.str()},
                                      {"degree", gc.degree},
                                      {"fuchs_relation", gc.fuchs_relation_holds},
                                      {"residue_theorem", gc.residue_theorem_holds}};
                j["exit_code"] = fuchs::exit_ok;
                o.emit(j);
                return (int)fuchs::exit_ok;
            });
        }

        if (app.got_subcommand(c_conn))
            return run_validated(out, file, [](const Output &o, const fuchs::FuchsianOperator &op) {
                json j = fuchs::connection_to_json(op, fuchs::build_connection(op));
                j["exit_code"] = fuchs::exit_ok;
                o.emit(j);
                return (int)fuchs::exit_ok;
            });

        if (app.got_subcommand(c_dims)) {
            const auto d = fuchs::dims(m, n);
            out.emit(json{{"e", d.e}, {"c", d.c}, {"rigid", d.rigid}});
            return fuchs::exit_ok;
        }

        if (app.got_subcommand(c_tan))
            return run_validated(out, file, [](const Output &o, const fuchs::FuchsianOperator &op) {
                json j = fuchs::tangent_to_json(fuchs::isomonodromic_tangent_basis(op));
                j["exit_code"] = fuchs::exit_ok;
                o.emit(j);
                return (int)fuchs::exit_ok;
            });

        if (app.got_subcommand(c_gauge)) {
            fuchs::FuchsianOperator op1, op2;
            try {
                op1 = load(file);
                op2 = load(file2);
            } catch (const fuchs::ParseError &e) {
                return out.fail(fuchs::exit_parse_error, e.what());
            }
            if (!fuchs::validate_fuchs(op1).accepted || !fuchs::validate_fuchs(op2).accepted)
                return out.fail(fuchs::exit_invalid, "operator fails validation");
            const auto sol = fuchs::gauge_solve(op1, op2);
            std::string diag;
            const bool equivalent = fuchs::are_gauge_equivalent(op1, op2, &diag);
            json j = fuchs::gauge_to_json(sol, equivalent);
            const int code = diag.empty() ? fuchs::exit_ok : fuchs::exit_inconsistent;
            if (!diag.empty()) j["diagnostic"] = diag;
            j["exit_code"] = code;
            out.emit(j);
            return code;
        }

        if (app.got_subcommand(c_coh))
            return run_validated(out, file, [&ropt](const Output &o, const fuchs::FuchsianOperator &op) {
                const auto table = fuchs::exponent_table(op);
                const auto gen = fuchs::genericity_report(table, op.m, ropt.max_bits);
                if (!gen.generic())
                    return o.fail(gen.undecided() ? fuchs::exit_undecided : fuchs::exit_not_generic,
                                  "cohomology requires an established generic operator");
                fuchs::ParabolicData par;
                try {
                    par = fuchs::flags(op, table);
                } catch (const fuchs::UnsupportedModeError &e) {
                    return o.fail(fuchs::exit_undecided, e.what());
                }
                const auto led = fuchs::sequence_ledger(op, par);
                json j = fuchs::ledger_to_json(led);
                j["para"] = fuchs::section_space_to_json(fuchs::h0_end_para(op, par));
                j["iso"] = fuchs::section_space_to_json(fuchs::h0_om_end_iso(op, par));
                const int code = led.consistent() ? fuchs::exit_ok : fuchs::exit_inconsistent;
                j["exit_code"] = code;
                o.emit(j);
                return code;
            });

        if (app.got_subcommand(c_rep)) {
            parse_orderings(ordering_specs, ropt);
            fuchs::FuchsianOperator op;
            try {
                op = load(file);
            } catch (const fuchs::ParseError &e) {
                return out.fail(fuchs::exit_parse_error, e.what());
            }
            const fuchs::Report rep = fuchs::build_report(op, ropt);
            out.emit(rep.body);
            return rep.exit_code;
        }

        if (app.got_subcommand(c_fuzz)) {
            std::mt19937_64 rng(seed);
            json arr = json::array();
            for (std::size_t i = 0; i < count; ++i)
                arr.push_back(fuchs::operator_to_json(fuchs::random_generic_operator(m, n, rng).op));
            out.emit(count == 1 ? arr[0] : arr);
            return fuchs::exit_ok;
        }
    } catch (const fuchs::ParseError &e) {
        return out.fail(fuchs::exit_parse_error, e.what());
    } catch (const std::exception &e) {
        return out.fail(fuchs::exit_inconsistent, e.what());
    }
    return fuchs::exit_ok;
}

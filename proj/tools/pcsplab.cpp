// pcsplab: command-line front end for the constraint-satisfaction laboratory.
//
// Exit codes: 0 yes/satisfiable/success, 1 no/unsatisfiable/nontrivial,
// 2 indeterminate or promise violation, 3 usage or parse error,
// 4 resource limit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "pcsp/acceptance.hpp"
#include "pcsp/condition.hpp"
#include "pcsp/errors.hpp"
#include "pcsp/instance.hpp"
#include "pcsp/oracles.hpp"
#include "pcsp/polymorphism.hpp"
#include "pcsp/reduction.hpp"
#include "pcsp/solvers.hpp"
#include "pcsp/structure.hpp"

using json = nlohmann::json;

namespace {

enum ExitCode : int {
    exit_success = 0,
    exit_negative = 1,
    exit_indeterminate = 2,
    exit_usage = 3,
    exit_resource = 4,
};

struct Options {
    std::string structure_spec;
    std::string template_spec;
    std::string instance_path;
    std::string condition_path;
    std::string table_path;
    std::string interpretation_path;
    std::string sidecar_path;
    std::string out_condition;
    std::string out_sidecar;
    std::string out_path;
    std::string method = "brute";
    std::vector<int> criteria;
    int arity = 1;
    int max_arity = 3;
    std::uint64_t budget = pcsp::default_node_budget;
    std::uint64_t seed = 0;
    int threads = 1;
    bool oracle = false;
    bool as_json = false;
};

std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string & path, const std::string & content)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw std::invalid_argument("cannot write '" + path + "'");
    out << content;
}

bool file_exists(const std::string & path)
{
    std::ifstream in(path);
    return in.good();
}

pcsp::RelationalStructure load_structure(const std::string & spec)
{
    if (file_exists(spec))
        return pcsp::parse_structure(read_file(spec));
    auto v = pcsp::builtin_from_spec(spec);
    if (auto * s = std::get_if<pcsp::RelationalStructure>(&v))
        return std::move(*s);
    throw std::invalid_argument("'" + spec + "' names a template; a structure is required here");
}

pcsp::PcspTemplate load_template(const std::string & spec, pcsp::SearchBudget * budget)
{
    if (file_exists(spec))
        return pcsp::parse_template(read_file(spec), budget);
    auto v = pcsp::builtin_from_spec(spec);
    if (auto * t = std::get_if<pcsp::PcspTemplate>(&v))
        return std::move(*t);
    return pcsp::make_csp_template(std::get<pcsp::RelationalStructure>(std::move(v)));
}

json assignment_json(const pcsp::PPInstance & inst, const pcsp::Assignment & assignment)
{
    json out = json::object();
    for (std::size_t i = 0; i < inst.variables.size(); ++i)
        out[inst.variables[i]] = assignment[i];
    return out;
}

std::string assignment_text(const pcsp::PPInstance & inst, const pcsp::Assignment & assignment)
{
    std::string out = "assignment";
    for (std::size_t i = 0; i < inst.variables.size(); ++i)
        out += " " + inst.variables[i] + "=" + std::to_string(assignment[i]);
    return out;
}

bool looks_like_2sat(const pcsp::PPInstance & inst, const pcsp::RelationalStructure & s)
{
    if (s.domain_size != 2)
        return false;
    for (const auto & c : inst.conjuncts)
        if (c.symbol.size() != 4 || c.symbol.compare(0, 2, "R_") != 0 || c.args.size() != 2)
            return false;
    return true;
}

bool looks_like_lin(const pcsp::RelationalStructure & s)
{
    if (! pcsp::is_prime(s.domain_size) || s.relations.empty())
        return false;
    for (const auto & r : s.relations)
        if (r.arity != 3 || r.symbol.compare(0, 2, "L_") != 0)
            return false;
    return true;
}

int cmd_solve(const Options & opt)
{
    pcsp::SearchBudget budget(opt.budget);
    auto structure = load_structure(opt.structure_spec);
    auto signature = structure.signature();
    auto inst = pcsp::parse_instance(read_file(opt.instance_path), &signature);

    std::string solver = "brute-force";
    std::optional<pcsp::Assignment> result;
    if (! opt.oracle && looks_like_2sat(inst, structure)) {
        solver = "2sat-implication-graph";
        result = pcsp::solve_2sat(inst);
    }
    else if (! opt.oracle && looks_like_lin(structure) && inst.equalities.empty()) {
        solver = "gaussian-mod-" + std::to_string(structure.domain_size);
        auto solution = pcsp::solve_mod_p(pcsp::lin_instance_to_system(inst, structure));
        if (solution)
            result = pcsp::Assignment(solution->begin(), solution->end());
    }
    else {
        result = pcsp::brute_force_decide(inst, structure, &budget);
    }

    if (result && ! pcsp::satisfies_instance(inst, structure, *result))
        throw std::logic_error("solver returned a non-satisfying assignment");

    if (opt.as_json) {
        json out{{"command", "solve"},
                 {"solver", solver},
                 {"satisfiable", result.has_value()}};
        if (result)
            out["assignment"] = assignment_json(inst, *result);
        std::cout << out.dump(2) << '\n';
    }
    else {
        std::cout << "solver " << solver << '\n';
        std::cout << "satisfiable " << (result ? "yes" : "no") << '\n';
        if (result)
            std::cout << assignment_text(inst, *result) << '\n';
    }
    return result ? exit_success : exit_negative;
}

int cmd_pcsp(const Options & opt)
{
    pcsp::SearchBudget budget(opt.budget);
    auto t = load_template(opt.template_spec, &budget);
    auto signature = t.yes.signature();
    auto inst = pcsp::parse_instance(read_file(opt.instance_path), &signature);

    if (opt.method == "rational") {
        const auto reference = pcsp::builtin_template("onein3-vs-nae");
        if (t.yes.relations.size() != 1 || t.yes.domain_size != 2 ||
            t.yes.relations[0].tuples != reference.yes.relations[0].tuples ||
            t.no.relations[0].tuples != reference.no.relations[0].tuples)
            throw std::invalid_argument("--method rational applies only to the onein3-vs-nae "
                                        "template");
        auto normalized = pcsp::normalize(inst);
        auto assignment = pcsp::solve_1in3_nae(normalized);
        if (opt.as_json)
            std::cout << json{{"command", "pcsp"},
                              {"method", "rational"},
                              {"verdict", "Yes"},
                              {"assignment", assignment_json(normalized, assignment)}}
                             .dump(2)
                      << '\n';
        else {
            std::cout << "verdict Yes\n";
            std::cout << assignment_text(normalized, assignment) << '\n';
        }
        return exit_success;
    }

    auto result = pcsp::brute_force_pcsp(inst, t, &budget);
    const char * verdict = result.verdict == pcsp::PcspVerdict::Yes  ? "Yes"
        : result.verdict == pcsp::PcspVerdict::No                    ? "No"
                                                                     : "Indeterminate";
    if (opt.as_json) {
        json out{{"command", "pcsp"}, {"method", "brute"}, {"verdict", verdict}};
        if (result.yes_witness)
            out["assignment"] = assignment_json(inst, *result.yes_witness);
        std::cout << out.dump(2) << '\n';
    }
    else {
        std::cout << "verdict " << verdict << '\n';
        if (result.yes_witness)
            std::cout << assignment_text(inst, *result.yes_witness) << '\n';
    }
    switch (result.verdict) {
    case pcsp::PcspVerdict::Yes: return exit_success;
    case pcsp::PcspVerdict::No: return exit_negative;
    default: return exit_indeterminate;
    }
}

int cmd_polys(const Options & opt)
{
    pcsp::SearchBudget budget(opt.budget);
    auto t = load_template(opt.template_spec, &budget);
    auto tables = pcsp::all_polymorphisms(t, opt.arity, &budget);

    if (opt.as_json) {
        json list = json::array();
        for (const auto & f : tables)
            list.push_back({{"in", f.in_domain()},
                            {"out", f.out_domain()},
                            {"arity", f.arity()},
                            {"table", f.table()}});
        std::cout << json{{"command", "polys"}, {"count", tables.size()}, {"tables", list}}.dump(2)
                  << '\n';
    }
    else {
        std::cout << "count " << tables.size() << '\n';
        for (const auto & f : tables)
            std::cout << pcsp::serialize_function_table(f);
    }
    return exit_success;
}

int cmd_check_poly(const Options & opt)
{
    pcsp::SearchBudget budget(opt.budget);
    auto t = load_template(opt.template_spec, &budget);
    auto f = pcsp::parse_function_table(read_file(opt.table_path));
    bool ok = pcsp::is_polymorphism(f, t, &budget);
    if (opt.as_json)
        std::cout << json{{"command", "check-poly"}, {"polymorphism", ok}}.dump(2) << '\n';
    else
        std::cout << "polymorphism " << (ok ? "yes" : "no") << '\n';
    return ok ? exit_success : exit_negative;
}

int cmd_trivial(const Options & opt)
{
    auto condition = pcsp::parse_condition(read_file(opt.condition_path));
    auto minor = pcsp::as_minor(condition);
    std::optional<pcsp::ProjectionWitness> witness =
        minor ? pcsp::is_trivial(*minor) : pcsp::is_trivial_by_projections(condition);

    if (opt.as_json) {
        json out{{"command", "trivial"},
                 {"minor", minor.has_value()},
                 {"trivial", witness.has_value()}};
        if (witness)
            out["witness"] = *witness;
        std::cout << out.dump(2) << '\n';
    }
    else {
        std::cout << "trivial " << (witness ? "yes" : "no") << '\n';
        if (witness) {
            std::cout << "witness";
            for (const auto & [symbol, coord] : *witness)
                std::cout << ' ' << symbol << "=" << coord;
            std::cout << '\n';
        }
    }
    return witness ? exit_success : exit_negative;
}

int cmd_satisfy(const Options & opt)
{
    pcsp::SearchBudget budget(opt.budget);
    auto t = load_template(opt.template_spec, &budget);
    auto condition = pcsp::parse_condition(read_file(opt.condition_path));
    auto minor = pcsp::as_minor(condition);
    if (! minor)
        throw std::invalid_argument("satisfaction search expects a minor condition (no nesting, "
                                    "one symbol per side)");
    auto interp = pcsp::find_satisfying_interpretation(*minor, t, opt.max_arity, &budget);

    if (opt.as_json) {
        json out{{"command", "satisfy"}, {"satisfied", interp.has_value()}};
        if (interp) {
            json tables = json::object();
            for (const auto & [name, f] : interp->tables)
                tables[name] = {{"in", f.in_domain()},
                                {"out", f.out_domain()},
                                {"arity", f.arity()},
                                {"table", f.table()}};
            out["interpretation"] = tables;
        }
        std::cout << out.dump(2) << '\n';
    }
    else {
        std::cout << "satisfied " << (interp ? "yes" : "no") << '\n';
        if (interp)
            std::cout << pcsp::serialize_interpretation(*interp);
    }
    return interp ? exit_success : exit_negative;
}

int cmd_reduce(const Options & opt)
{
    pcsp::SearchBudget budget(opt.budget);
    auto t = load_template(opt.template_spec, &budget);
    auto signature = t.yes.signature();
    auto inst =
        pcsp::normalize(pcsp::parse_instance(read_file(opt.instance_path), &signature));
    auto art = pcsp::instance_to_condition(inst, t);

    const std::string condition_text = pcsp::serialize_condition(art.condition);
    const std::string sidecar_text = pcsp::serialize_sidecar(art);
    if (! opt.out_condition.empty())
        write_file(opt.out_condition, condition_text);
    if (! opt.out_sidecar.empty())
        write_file(opt.out_sidecar, sidecar_text);

    if (opt.as_json) {
        std::cout << json{{"command", "reduce"},
                          {"condition", condition_text},
                          {"sidecar", sidecar_text}}
                         .dump(2)
                  << '\n';
    }
    else {
        if (opt.out_condition.empty())
            std::cout << condition_text;
        if (opt.out_sidecar.empty())
            std::cout << sidecar_text;
        if (! opt.out_condition.empty() && ! opt.out_sidecar.empty())
            std::cout << "wrote " << opt.out_condition << " and " << opt.out_sidecar << '\n';
    }
    return exit_success;
}

int cmd_decode(const Options & opt)
{
    pcsp::SearchBudget budget(opt.budget);
    auto t = load_template(opt.template_spec, &budget);
    auto signature = t.yes.signature();
    auto inst =
        pcsp::normalize(pcsp::parse_instance(read_file(opt.instance_path), &signature));
    auto interp = pcsp::parse_interpretation(read_file(opt.interpretation_path));

    pcsp::ReductionArtifacts art;
    art.variable_symbols = pcsp::parse_sidecar(read_file(opt.sidecar_path));
    auto assignment = pcsp::certificate_to_assignment(interp, art, inst, t);

    if (opt.as_json)
        std::cout << json{{"command", "decode"},
                          {"verified", true},
                          {"assignment", assignment_json(inst, assignment)}}
                         .dump(2)
                  << '\n';
    else {
        std::cout << "verified yes\n";
        std::cout << assignment_text(inst, assignment) << '\n';
    }
    return exit_success;
}

int cmd_unreduce(const Options & opt)
{
    pcsp::SearchBudget budget(opt.budget);
    auto s = load_structure(opt.structure_spec);
    auto condition = pcsp::parse_condition(read_file(opt.condition_path));
    auto minor = pcsp::as_minor(condition);
    if (! minor)
        throw std::invalid_argument("unreduce expects a minor condition");
    auto inst = pcsp::condition_to_instance(*minor, s, &budget);
    const std::string text = pcsp::serialize_instance(inst);

    if (! opt.out_path.empty())
        write_file(opt.out_path, text);
    if (opt.as_json)
        std::cout << json{{"command", "unreduce"}, {"instance", text}}.dump(2) << '\n';
    else if (opt.out_path.empty())
        std::cout << text;
    else
        std::cout << "wrote " << opt.out_path << '\n';
    return exit_success;
}

int cmd_selftest(const Options & opt)
{
    if (opt.as_json) {
        auto results = pcsp::run_acceptance(opt.criteria, opt.seed, nullptr);
        json list = json::array();
        bool all = true;
        for (const auto & r : results) {
            list.push_back({{"index", r.index},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"detail", r.detail},
                            {"seconds", r.seconds}});
            all = all && r.pass;
        }
        std::cout << json{{"command", "selftest"}, {"all_pass", all}, {"criteria", list}}.dump(2)
                  << '\n';
        return all ? exit_success : exit_negative;
    }
    auto results = pcsp::run_acceptance(opt.criteria, opt.seed, &std::cout);
    for (const auto & r : results)
        if (! r.pass)
            return exit_negative;
    return exit_success;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"pcsplab: a laboratory for constraint satisfaction over fixed templates --\n"
                 "relational structures, pp-sentence solvers, polymorphism enumeration, minor\n"
                 "conditions, and the reductions between them"};
    app.require_subcommand(1);

    Options opt;
    if (const char * env = std::getenv("PCSPLAB_BUDGET"))
        opt.budget = std::strtoull(env, nullptr, 10);

    auto add_common = [&](CLI::App * cmd) {
        cmd->add_option("--budget", opt.budget, "node-visit budget for backtracking searches");
        cmd->add_option("--seed", opt.seed, "seed for randomized harnesses");
        cmd->add_option("--threads", opt.threads, "reserved; engines currently run on one thread")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--json", opt.as_json, "structured report on stdout");
    };

    auto * solve = app.add_subcommand("solve", "decide a pp-instance over a structure");
    solve->add_option("--structure", opt.structure_spec, "builtin spec or structure file")
        ->required();
    solve->add_option("--instance", opt.instance_path, "pp-instance file")->required();
    solve->add_flag("--oracle", opt.oracle, "force the brute-force oracle");
    add_common(solve);

    auto * pcsp_cmd = app.add_subcommand("pcsp", "classify an instance against a promise template");
    pcsp_cmd->add_option("--template", opt.template_spec, "builtin spec or template file")
        ->required();
    pcsp_cmd->add_option("--instance", opt.instance_path, "pp-instance file")->required();
    pcsp_cmd->add_option("--method", opt.method, "brute (default) or rational")
        ->check(CLI::IsMember({"brute", "rational"}));
    add_common(pcsp_cmd);

    auto * polys = app.add_subcommand("polys", "enumerate polymorphisms of a given arity");
    polys->add_option("--template", opt.template_spec, "builtin spec or template file")->required();
    polys->add_option("--arity", opt.arity, "arity to enumerate")->required();
    add_common(polys);

    auto * check = app.add_subcommand("check-poly", "test a function table file");
    check->add_option("--template", opt.template_spec, "builtin spec or template file")->required();
    check->add_option("--table", opt.table_path, "function table file")->required();
    add_common(check);

    auto * trivial = app.add_subcommand("trivial", "decide condition triviality");
    trivial->add_option("--condition", opt.condition_path, "condition file")->required();
    add_common(trivial);

    auto * satisfy = app.add_subcommand("satisfy", "search for a satisfying interpretation in "
                                                   "the template's polymorphisms");
    satisfy->add_option("--template", opt.template_spec, "builtin spec or template file")
        ->required();
    satisfy->add_option("--condition", opt.condition_path, "condition file")->required();
    satisfy->add_option("--max-arity", opt.max_arity, "arity bound for condition symbols");
    add_common(satisfy);

    auto * reduce = app.add_subcommand("reduce", "transform an instance into a minor condition");
    reduce->add_option("--template", opt.template_spec, "builtin spec or template file")
        ->required();
    reduce->add_option("--instance", opt.instance_path, "pp-instance file")->required();
    reduce->add_option("--out-condition", opt.out_condition, "condition output path");
    reduce->add_option("--out-sidecar", opt.out_sidecar, "sidecar output path");
    add_common(reduce);

    auto * decode = app.add_subcommand("decode", "decode an interpretation into an assignment");
    decode->add_option("--template", opt.template_spec, "builtin spec or template file")
        ->required();
    decode->add_option("--instance", opt.instance_path, "pp-instance file")->required();
    decode->add_option("--interpretation", opt.interpretation_path, "interpretation file")
        ->required();
    decode->add_option("--sidecar", opt.sidecar_path, "sidecar mapping file")->required();
    add_common(decode);

    auto * unreduce = app.add_subcommand("unreduce", "transform a minor condition into an "
                                                     "instance over a structure");
    unreduce->add_option("--condition", opt.condition_path, "condition file")->required();
    unreduce->add_option("--structure", opt.structure_spec, "builtin spec or structure file")
        ->required();
    unreduce->add_option("--out", opt.out_path, "instance output path");
    add_common(unreduce);

    auto * selftest = app.add_subcommand("selftest", "run the verification harness");
    selftest->add_option("--criteria", opt.criteria, "criterion indices (default: all)");
    add_common(selftest);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (solve->parsed())
            return cmd_solve(opt);
        if (pcsp_cmd->parsed())
            return cmd_pcsp(opt);
        if (polys->parsed())
            return cmd_polys(opt);
        if (check->parsed())
            return cmd_check_poly(opt);
        if (trivial->parsed())
            return cmd_trivial(opt);
        if (satisfy->parsed())
            return cmd_satisfy(opt);
        if (reduce->parsed())
            return cmd_reduce(opt);
        if (decode->parsed())
            return cmd_decode(opt);
        if (unreduce->parsed())
            return cmd_unreduce(opt);
        if (selftest->parsed())
            return cmd_selftest(opt);
    }
    catch (const pcsp::ResourceLimitError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_resource;
    }
    catch (const pcsp::PromiseViolationError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_indeterminate;
    }
    catch (const pcsp::CertificateError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_indeterminate;
    }
    catch (const pcsp::ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "limca/core/errors.hpp"
#include "limca/delta/reduction.hpp"
#include "limca/lang/limit.hpp"
#include "limca/verify/render.hpp"
#include "limca/verify/suites.hpp"

using namespace limca;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

CellularAutomaton rule_arg(const std::string& path) { return load_rule(path, delta_resolver()); }

// A configuration file, or an inline word over the rule's alphabet.
PeriodicConfiguration config_arg(const std::string& arg, Alphabet a) {
    if (std::filesystem::is_regular_file(arg)) return load_config(arg);
    return make_config(a, parse_word(arg));
}

Word word_arg(const std::string& s) {
    Word w = parse_word(s);
    check_word(kBinary, w);
    return w;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) std::cout << text;
    else write_file(out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"limca: limit sets of cellular automata, compiled reductions and their checks"};
    app.require_subcommand(1);

    std::string file;
    auto* surj = app.add_subcommand("surj", "decide surjectivity of a rule");
    surj->add_option("file", file, "rule file")->required();
    auto* orphan = app.add_subcommand("orphan", "print the shortlex-first orphan of a rule");
    orphan->add_option("file", file, "rule file")->required();

    auto* code = app.add_subcommand("code", "freezing codes");
    code->require_subcommand(1);
    std::string u_sigma, out;
    int a_size = 2, b_size = 29;
    std::size_t toy_k = 14;
    std::vector<std::string> pool;
    auto* code_build = code->add_subcommand("build", "formula code for u_Σ and C = A x B");
    auto* code_toy = code->add_subcommand("toy", "search a toy code");
    for (auto* c : {code_build, code_toy}) {
        c->add_option("--u", u_sigma, "u_Σ (starts and ends with 1)")->required();
        c->add_option("--a", a_size, "|A|");
        c->add_option("--b", b_size, "|B|");
        c->add_option("--out", out, "write the code file here");
    }
    code_toy->add_option("--k", toy_k, "codeword length");
    code_toy->add_option("--pool", pool, "z-track words (default 0^k and one centred 1)");

    auto* squad = app.add_subcommand("squad", "firing squad");
    squad->require_subcommand(1);
    int max_n = 32;
    auto* squad_validate = squad->add_subcommand("validate", "segment runs and limit-cycle check");
    squad_validate->add_option("--max-n", max_n, "largest segment length");

    auto* delta = app.add_subcommand("delta", "compiled reductions");
    delta->require_subcommand(1);
    std::string manifest;
    int which = 0;
    std::string mutate = "none";
    auto* delta_build = delta->add_subcommand("build", "compile F_0/F_1 and emit the rule file");
    delta_build->add_option("manifest", manifest, "reduction manifest")->required();
    delta_build->add_option("--which", which, "0 or 1")->check(CLI::Range(0, 1));
    delta_build->add_option("--mutate", mutate, "rule defect for negative controls");
    delta_build->add_option("--out", out, "write the rule file here");

    auto* sim = app.add_subcommand("sim", "simulate and render a space-time diagram");
    std::string rule_path, config, render = "txt";
    std::size_t steps = 10;
    sim->add_option("--rule", rule_path, "rule file")->required();
    sim->add_option("--config", config, "configuration file or inline word")->required();
    sim->add_option("--steps", steps, "number of steps");
    sim->add_option("--render", render, "txt or pbm");
    sim->add_option("--out", out, "write the diagram here");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    SuiteParams params;
    std::string squad_variant = "default";
    verify->add_option("suite", suite, "suite name")->required();
    verify->add_option("--samples", params.samples, "sample count (0: suite default)");
    verify->add_option("--seed", params.seed, "random seed");
    verify->add_option("--manifest", params.manifest, "reduction manifest");
    verify->add_option("--mutate", mutate, "rule defect for negative controls");
    verify->add_option("--squad-variant", squad_variant, "default or no-isolation");
    verify->add_option("--code", params.code, "toy or formula");
    verify->add_option("--period", params.periods, "periods for exhaustive suites (repeatable)");
    verify->add_option("--depth", params.depth, "fire: backward depth");
    verify->add_option("--max-span", params.max_span, "fire: widest span checked");
    verify->add_option("--max-n", params.max_n, "squad: largest segment length");
    verify->add_option("--count", params.count, "sigomeg: number of J values");
    verify->add_option("--out", out, "also write the report here");

    auto* nilprobe = app.add_subcommand("nilprobe", "probe nilpotency through a spreading state");
    int theta = 0;
    std::size_t width = 4, depth = 4;
    nilprobe->add_option("--rule", rule_path, "rule file")->required();
    nilprobe->add_option("--theta", theta, "spreading state");
    nilprobe->add_option("--width", width, "largest period searched for a θ-free cycle");
    nilprobe->add_option("--depth", depth, "largest step count tried for nilpotency");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*surj) {
            std::cout << (is_surjective(rule_arg(file)) ? "surjective" : "not surjective") << '\n';
        } else if (*orphan) {
            auto o = shortest_orphan(rule_arg(file));
            std::cout << (o ? format_word(*o) : "none") << '\n';
        } else if (*code_build) {
            FreezingCode c = build_code(word_arg(u_sigma), SymbolCoding(a_size, b_size));
            emit(c.str(), out);
            if (!out.empty()) std::cout << "m: " << c.m() << "\nn: " << c.n() << "\nk: " << c.k() << '\n';
        } else if (*code_toy) {
            Word u = word_arg(u_sigma);
            Sft sigma(kBinary, {u});
            std::vector<Word> z;
            for (const auto& s : pool) z.push_back(word_arg(s));
            if (z.empty()) {
                Word z0(toy_k, 0), z1(toy_k, 0);
                z1[toy_k / 2] = 1;
                z = {z0, z1};
            }
            FreezingCode c = search_toy_code(sigma, u, z, SymbolCoding(a_size, b_size), toy_k);
            emit(c.str(), out);
            if (!out.empty()) std::cout << "codewords: " << c.table().size() << "\nk: " << c.k() << '\n';
        } else if (*squad_validate) {
            SuiteParams p;
            p.max_n = max_n;
            SuiteReport rep = run_suite("squad", p);
            std::cout << rep.str();
            return rep.verdict == Verdict::pass ? kOk : kFail;
        } else if (*delta_build) {
            ReductionInstance inst = load_reduction(manifest);
            DeltaAutomaton d = inst.compile(which, parse_mutation(mutate));
            std::string ref = std::filesystem::path(manifest).filename().string();
            if (!out.empty())
                ref = std::filesystem::relative(std::filesystem::absolute(manifest),
                                                std::filesystem::absolute(out).parent_path())
                          .string();
            emit(format_delta_rule(d, ref, which), out);
            std::cerr << "u_sigma: " << format_word(inst.u_sigma) << "\nk: " << inst.code->k()
                      << "\nradius: " << d.radius() << '\n';
        } else if (*sim) {
            CellularAutomaton ca = rule_arg(rule_path);
            emit(render_spacetime(ca, config_arg(config, ca.alphabet()), steps, render), out);
        } else if (*verify) {
            params.mutation = parse_mutation(mutate);
            if (squad_variant == "no-isolation") params.squad_without_isolation = true;
            else if (squad_variant != "default") throw DomainError("unknown squad variant '" + squad_variant + "'");
            SuiteReport rep = run_suite(suite, params);
            std::cout << rep.str();
            if (!out.empty()) write_file(out, rep.str());
            std::cerr << "elapsed: " << rep.elapsed << " s\n";
            return rep.verdict == Verdict::pass ? kOk : kFail;
        } else if (*nilprobe) {
            CellularAutomaton ca = rule_arg(rule_path);
            if (theta < 0 || theta >= ca.alphabet().size) throw DomainError("θ outside the alphabet");
            std::cout << format_verdict(nilpotency_probe(ca, static_cast<Symbol>(theta), width, depth)) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

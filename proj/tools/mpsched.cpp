// Command-line front end: solve one instance, run benchmark suites, generate
// instances, verify schedules.
//
// Exit codes: 0 success, 1 usage/parse errors, 2 infeasible instance or
// instance outside the algorithm's domain, 3 broken internal invariant.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mpsched/bench.hpp"
#include "mpsched/io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mpsched::BadArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mpsched::BadArgument("cannot write '" + path + "'");
    out << content;
}

mpsched::Rational parse_rational_flag(const std::string& text, const char* what) {
    auto r = mpsched::rat_parse(text);
    if (!r) throw mpsched::BadArgument(std::string("malformed ") + what + " '" + text + "'");
    return *r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallel-machine scheduling with a complete multipartite incompatibility graph"};
    app.require_subcommand(1);

    // --- solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "run one algorithm on an instance file");
    std::string algo, instance_path, schedule_out, epsilon_text;
    solve->add_option("--algo", algo, "one of: identical-greedy dp-cmax dp-sumcj cover-2apx-cmax "
                                      "cover-4apx-sumcj lp-4apx-sumcj ptas-cmax oracle-cmax "
                                      "oracle-sumcj")
        ->required();
    solve->add_option("-i,--instance", instance_path, "instance file")->required();
    solve->add_option("-o,--output", schedule_out, "schedule file to write");
    solve->add_option("--epsilon", epsilon_text, "precision for ptas-cmax (e.g. 1/4 or 0.25)");

    // --- bench -------------------------------------------------------------
    auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite, CSV to stdout or --out");
    std::string suite, bench_out;
    unsigned long long bench_seed = 1;
    bench_cmd->add_option("--suite", suite, "small | paper-examples | ratio-sweep")->required();
    bench_cmd->add_option("--seed", bench_seed, "seed for generated suites");
    bench_cmd->add_option("--out", bench_out, "write CSV here instead of stdout");

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    std::string gen_type, gen_out, a_list;
    long long gen_b = 0;
    unsigned long long gen_seed = 1;
    int gen_k = 1, gen_m = 1;
    long long n_lo = 1, n_hi = 8, p_lo = 1, p_hi = 4, s_lo = 1, s_hi = 3;
    bool gen_unit = false;
    gen->add_option("--type", gen_type, "random | 3partition")->required();
    gen->add_option("-o,--output", gen_out, "output file")->required();
    gen->add_option("--seed", gen_seed);
    gen->add_option("--k", gen_k, "partition count (random)");
    gen->add_option("--m", gen_m, "machine count (random)");
    gen->add_option("--n-min", n_lo);
    gen->add_option("--n-max", n_hi);
    gen->add_option("--p-min", p_lo);
    gen->add_option("--p-max", p_hi);
    gen->add_option("--s-min", s_lo);
    gen->add_option("--s-max", s_hi);
    gen->add_flag("--unit", gen_unit, "unit processing times");
    gen->add_option("--a", a_list, "comma-separated element sizes (3partition)");
    gen->add_option("--b", gen_b, "bound value (3partition)");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "validate a schedule against an instance");
    std::string v_instance, v_schedule;
    verify->add_option("-i,--instance", v_instance)->required();
    verify->add_option("-s,--schedule", v_schedule)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        if (*solve) {
            std::optional<mpsched::Rational> eps;
            if (!epsilon_text.empty()) eps = parse_rational_flag(epsilon_text, "epsilon");
            if (algo == "ptas-cmax" && !eps) {
                std::cerr << "error: ptas-cmax requires --epsilon\n";
                return 1;
            }
            mpsched::Instance ins = mpsched::parse_instance(read_file(instance_path));
            mpsched::SolveResult res = mpsched::run_algorithm(algo, ins, eps);
            if (!schedule_out.empty())
                write_file(schedule_out, mpsched::serialize_schedule(res.schedule));
            std::cout << "algo=" << algo << " objective=" << res.objective
                      << " value=" << mpsched::rat_str(res.value) << "\n";
            return 0;
        }
        if (*bench_cmd) {
            auto records = mpsched::bench::run_suite(suite, bench_seed);
            std::ostringstream csv;
            csv << mpsched::bench::csv_header() << "\n";
            for (const auto& r : records) csv << mpsched::bench::csv_row(r) << "\n";
            if (bench_out.empty())
                std::cout << csv.str();
            else
                write_file(bench_out, csv.str());
            return 0;
        }
        if (*gen) {
            mpsched::Instance ins;
            if (gen_type == "random") {
                ins = mpsched::gen_random_instance(gen_seed, gen_k, gen_m, {n_lo, n_hi},
                                                   {p_lo, p_hi}, {s_lo, s_hi}, gen_unit);
            } else if (gen_type == "3partition") {
                std::vector<long long> A;
                std::stringstream ss(a_list);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) A.push_back(std::stoll(tok));
                auto red = mpsched::gen_3partition_instance(A, gen_b);
                std::cout << "yes-instance target SumCj = " << mpsched::rat_str(red.yes_target)
                          << "\n";
                ins = red.instance;
            } else {
                std::cerr << "error: unknown --type '" << gen_type << "'\n";
                return 1;
            }
            write_file(gen_out, mpsched::serialize_instance(ins));
            return 0;
        }
        if (*verify) {
            mpsched::Instance ins = mpsched::parse_instance(read_file(v_instance));
            mpsched::Schedule s = mpsched::parse_schedule(read_file(v_schedule), ins);
            if (auto violation = mpsched::validate_schedule(ins, s)) {
                std::cout << "invalid: " << violation->message << "\n";
                return 2;
            }
            std::cout << "ok\n";
            return 0;
        }
    } catch (const mpsched::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const mpsched::BadReductionInput& e) {
        std::cerr << "bad reduction input: " << e.what() << "\n";
        return 1;
    } catch (const mpsched::BadArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mpsched::Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const mpsched::DomainMismatch& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return 2;
    } catch (const mpsched::NotIdentical& e) {
        std::cerr << "not identical machines: " << e.what() << "\n";
        return 2;
    } catch (const mpsched::TooLarge& e) {
        std::cerr << "too large for exhaustive search: " << e.what() << "\n";
        return 2;
    } catch (const mpsched::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const mpsched::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

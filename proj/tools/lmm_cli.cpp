// Command-line front end: tableau synthesis, order/stability analysis,
// stability-region data, and solve/convergence runs as text and CSV.

#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lmm/analysis.hpp"
#include "lmm/integrate.hpp"
#include "lmm/io.hpp"
#include "lmm/problems.hpp"
#include "lmm/stability.hpp"
#include "lmm/tableau.hpp"

namespace {

struct MethodSpec {
    std::string family;  // ab | am | bdf | leapfrog
    int k = 0;
    bool trapezoid = false;
    std::string file;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

lmm::Tableau make_tableau(const MethodSpec& m) {
    if (!m.file.empty()) {
        if (!m.family.empty())
            throw UsageError("give either a built-in method or --file, not both");
        std::ifstream in(m.file);
        if (!in) throw UsageError("cannot open tableau file '" + m.file + "'");
        return lmm::parse_tableau(in);
    }
    if (m.family == "ab") return lmm::adams_bashforth(m.k);
    if (m.family == "am") return lmm::adams_moulton(m.k, m.trapezoid);
    if (m.family == "bdf") return lmm::bdf(m.k);
    if (m.family == "leapfrog") return lmm::leapfrog();
    if (m.family.empty()) throw UsageError("no method given (family+k or --file)");
    throw UsageError("unknown method family '" + m.family + "' (want ab, am, bdf, leapfrog)");
}

void add_method_options(CLI::App* cmd, MethodSpec& m) {
    cmd->set_help_flag("--help", "print help");  // keep -h free for --h
    cmd->add_option("family", m.family, "method family: ab, am, bdf, leapfrog");
    cmd->add_option("k", m.k, "step count");
    cmd->add_flag("--trapezoid", m.trapezoid, "select the implicit trapezoid for am 1");
    cmd->add_option("--file", m.file, "tableau file (k=, alpha=, beta= lines)");
}

struct OutStream {
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw UsageError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& get() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

lmm::ProblemParams parse_params(const std::vector<std::string>& kvs) {
    lmm::ProblemParams params;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--param wants key=value, got '" + kv + "'");
        try {
            params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("--param value not numeric in '" + kv + "'");
        }
    }
    return params;
}

std::vector<double> parse_h_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw UsageError("--h entry not numeric: '" + tok + "'");
        }
    }
    if (out.empty()) throw UsageError("--h list is empty");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear multistep method laboratory"};
    app.require_subcommand(1);

    MethodSpec method;
    std::string out_path;
    std::string problem_name = "dahlquist";
    std::vector<std::string> param_kvs;
    std::string h_csv = "0.1,0.05,0.025,0.0125,0.00625";
    double h_single = 0.1;
    double t_end = 1.0;
    std::string starter_name = "rk4";
    int samples = 10000;
    unsigned long long seed = 0;
    std::vector<double> window_vals = {-6.0, 2.0, -4.0, 4.0};
    std::vector<int> res_vals = {201, 201};

    auto* cmd_tableau = app.add_subcommand("tableau", "print exact coefficients");
    add_method_options(cmd_tableau, method);

    auto* cmd_analyze = app.add_subcommand("analyze", "order, consistency, and stability report");
    add_method_options(cmd_analyze, method);
    cmd_analyze->add_option("--samples", samples, "A-stability sample count");
    cmd_analyze->add_option("--seed", seed, "A-stability sampling seed");

    auto* cmd_region = app.add_subcommand("region", "absolute-stability region grid CSV");
    add_method_options(cmd_region, method);
    cmd_region->add_option("--out", out_path, "CSV destination (default stdout)");
    cmd_region->add_option("--window", window_vals, "re_min re_max im_min im_max")->expected(4);
    cmd_region->add_option("--res", res_vals, "grid resolution nx ny")->expected(2);

    auto* cmd_locus = app.add_subcommand("locus", "boundary-locus CSV");
    add_method_options(cmd_locus, method);
    cmd_locus->add_option("--out", out_path, "CSV destination (default stdout)");
    int locus_samples = 360;
    cmd_locus->add_option("--samples", locus_samples, "number of theta samples");

    auto* cmd_solve = app.add_subcommand("solve", "fixed-step solve, trajectory CSV");
    add_method_options(cmd_solve, method);
    cmd_solve->add_option("--out", out_path, "CSV destination (default stdout)");
    cmd_solve->add_option("--problem", problem_name, "built-in problem name");
    cmd_solve->add_option("--param", param_kvs, "problem parameter key=value");
    cmd_solve->add_option("--h", h_single, "step size");
    cmd_solve->add_option("--t-end", t_end, "final time");
    cmd_solve->add_option("--starter", starter_name, "starting values: exact or rk4");

    auto* cmd_order = app.add_subcommand("order", "convergence study, CSV plus slope");
    add_method_options(cmd_order, method);
    cmd_order->add_option("--out", out_path, "CSV destination (default stdout)");
    cmd_order->add_option("--problem", problem_name, "built-in problem name");
    cmd_order->add_option("--param", param_kvs, "problem parameter key=value");
    cmd_order->add_option("--h", h_csv, "comma-separated decreasing step sizes");
    cmd_order->add_option("--t-end", t_end, "final time");
    cmd_order->add_option("--starter", starter_name, "starting values: exact or rk4");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const lmm::Tableau tab = make_tableau(method);

        if (cmd_tableau->parsed()) {
            std::cout << "family: " << lmm::family_name(tab.family()) << "\n";
            std::cout << "k: " << tab.steps() << "\n";
            std::cout << "alpha:";
            for (const auto& a : tab.alphas()) std::cout << " " << lmm::to_string(a);
            std::cout << "\nbeta:";
            for (const auto& b : tab.betas()) std::cout << " " << lmm::to_string(b);
            std::cout << "\n";
        } else if (cmd_analyze->parsed()) {
            const auto rep = lmm::order_report(tab);
            std::cout << lmm::format_order_report(rep);
            const auto zs = lmm::zero_stability(tab);
            std::cout << "zero_stability=" << lmm::zero_stability_name(zs.cls) << "\n";
            std::cout << "stiff_decay=" << (lmm::has_stiff_decay(tab) ? "true" : "false") << "\n";
            const auto av = lmm::is_a_stable_sampled(tab, samples, seed);
            if (av.a_stable_on_sample) {
                std::cout << "a_stability=no_counterexample_found samples=" << samples << "\n";
            } else {
                std::cout << "a_stability=counterexample z="
                          << lmm::format_double(av.counterexample->real())
                          << (av.counterexample->imag() < 0 ? "" : "+")
                          << lmm::format_double(av.counterexample->imag()) << "i\n";
            }
        } else if (cmd_region->parsed()) {
            OutStream out(out_path);
            const lmm::Window w{window_vals[0], window_vals[1], window_vals[2], window_vals[3]};
            lmm::write_region_csv(out.get(), lmm::region_grid_scan(tab, w, res_vals[0], res_vals[1]));
        } else if (cmd_locus->parsed()) {
            OutStream out(out_path);
            lmm::write_locus_csv(out.get(), lmm::boundary_locus(tab, locus_samples));
        } else if (cmd_solve->parsed() || cmd_order->parsed()) {
            const lmm::IVProblem problem = lmm::build_problem(problem_name, parse_params(param_kvs));
            lmm::Starter starter;
            if (starter_name == "exact")
                starter = lmm::Starter::Exact;
            else if (starter_name == "rk4")
                starter = lmm::Starter::RK4;
            else
                throw UsageError("unknown starter '" + starter_name + "'");

            if (cmd_solve->parsed()) {
                lmm::SolveConfig cfg;
                cfg.h = h_single;
                cfg.t_end = t_end;
                cfg.starter = starter;
                const auto traj = lmm::solve_fixed_step(tab, problem, cfg);
                OutStream out(out_path);
                lmm::write_trajectory_csv(out.get(), traj);
                if (traj.diverged) std::cerr << "trajectory diverged (run truncated)\n";
                if (problem.exact && !traj.diverged) {
                    const auto exact = problem.exact(traj.times.back());
                    double err = 0.0;
                    for (std::size_t i = 0; i < exact.size(); ++i)
                        err = std::max(err, std::abs(traj.states.back()[i] - exact[i]));
                    std::cerr << "final_error=" << lmm::format_double(err) << "\n";
                }
            } else {
                const auto rep =
                    lmm::observed_order(tab, problem, parse_h_list(h_csv), t_end, starter);
                OutStream out(out_path);
                lmm::write_convergence_csv(out.get(), rep);
                std::cout << "slope=" << lmm::format_double(rep.slope) << "\n";
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

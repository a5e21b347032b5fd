// Command-line front end: fit interval-censored data from CSV, query
// quantiles, emit plot-ready curves, and drive simulation scenarios.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "logconfit/errors.hpp"
#include "logconfit/estimator.hpp"
#include "logconfit/simharness.hpp"

namespace {

using namespace logconfit;

constexpr int kExitBadInput = 2;
constexpr int kExitNoConvergence = 3;

std::vector<std::pair<double, double>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty CSV: " + path);
    }
    if (line.find("left") == std::string::npos ||
        line.find("right") == std::string::npos) {
        throw std::runtime_error("CSV header must be 'left,right', got: " + line);
    }
    std::vector<std::pair<double, double>> raw;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": expected 'left,right'");
        }
        try {
            const double left = std::stod(line.substr(0, comma));
            const std::string rs = line.substr(comma + 1);
            const double right =
                rs.find("inf") != std::string::npos ? kInfTime : std::stod(rs);
            if (!(left >= 0.0) || !(left < right)) {
                throw std::runtime_error("");
            }
            raw.emplace_back(left, right);
        } catch (const std::exception&) {
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": invalid interval: " + line);
        }
    }
    return raw;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_fit(const std::string& input, const std::string& output, double eta) {
    std::vector<std::pair<double, double>> raw;
    try {
        raw = read_csv(input);
    } catch (const std::exception& e) {
        std::cerr << "fit: " << e.what() << "\n";
        return kExitBadInput;
    }
    FitOptions opts;
    opts.eta = eta;
    FitResult fr;
    try {
        fr = fit(raw, opts);
    } catch (const NonConvergence& e) {
        std::cerr << "fit: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "fit: " << e.what() << "\n";
        return kExitBadInput;
    }
    const std::string json = to_json(fr);
    if (output.empty()) {
        std::cout << json << "\n";
    } else {
        write_file(output, json);
    }
    return 0;
}

int cmd_quantile(const std::string& input, const std::vector<double>& probs) {
    FitResult fr;
    try {
        fr = fit_from_json(read_file(input));
    } catch (const std::exception& e) {
        std::cerr << "quantile: " << e.what() << "\n";
        return kExitBadInput;
    }
    for (double p : probs) {
        try {
            std::printf("%.17g,%.17g\n", p, quantile(fr, p));
        } catch (const QuantileAboveRange&) {
            std::printf("%.17g,nan\n", p);
        } catch (const std::exception& e) {
            std::cerr << "quantile: " << e.what() << "\n";
            return kExitBadInput;
        }
    }
    return 0;
}

int cmd_plot_data(const std::string& input, const std::string& output,
                  int grid_points) {
    FitResult fr;
    try {
        fr = fit_from_json(read_file(input));
        if (fr.tau.empty() || grid_points < 2) {
            throw std::runtime_error("invalid fit JSON or grid size");
        }
    } catch (const std::exception& e) {
        std::cerr << "plot-data: " << e.what() << "\n";
        return kExitBadInput;
    }
    std::string s = "t,F_lc,logF_lc,F_un\n";
    char buf[256];
    const double tmax = fr.tau.back();
    for (int i = 0; i < grid_points; ++i) {
        const double t = tmax * i / (grid_points - 1);
        const double f = evaluate_F(fr, t);
        const double lf = f > 0.0 ? std::log(f)
                                  : -std::numeric_limits<double>::infinity();
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", t, f, lf,
                      evaluate_F_un(fr, t));
        s += buf;
    }
    if (output.empty()) {
        std::cout << s;
    } else {
        write_file(output, s);
    }
    return 0;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config: " + path);
    }
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{}
                                          : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    Scenario sc;
    const std::string law = kv.count("law") ? kv.at("law") : "weibull";
    if (law == "weibull") {
        sc.law.type = LawType::Weibull;
    } else if (law == "exponential") {
        sc.law.type = LawType::Exponential;
    } else if (law == "loglogistic") {
        sc.law.type = LawType::LogLogistic;
    } else if (law == "lognormal") {
        sc.law.type = LawType::LogNormal;
    } else {
        throw std::runtime_error("unknown law: " + law);
    }
    if (kv.count("shape")) sc.law.shape = std::stod(kv.at("shape"));
    if (kv.count("scale")) sc.law.scale = std::stod(kv.at("scale"));
    if (kv.count("trunc")) sc.law.trunc = std::stod(kv.at("trunc"));

    const std::string cens = kv.count("censoring") ? kv.at("censoring") : "case2";
    if (cens == "case2") {
        sc.censoring.type = CensoringType::Case2;
    } else if (cens == "current_status") {
        sc.censoring.type = CensoringType::CurrentStatus;
    } else if (cens == "current_status_rounded") {
        sc.censoring.type = CensoringType::CurrentStatusRounded;
    } else {
        throw std::runtime_error("unknown censoring: " + cens);
    }
    if (kv.count("c1max")) sc.censoring.c1_max = std::stod(kv.at("c1max"));
    if (kv.count("c2max")) sc.censoring.c2_max = std::stod(kv.at("c2max"));
    if (kv.count("rate")) sc.censoring.rate = std::stod(kv.at("rate"));
    if (kv.count("round_step"))
        sc.censoring.round_step = std::stod(kv.at("round_step"));

    if (kv.count("N")) sc.N = std::stoi(kv.at("N"));
    if (kv.count("reps")) sc.replicates = std::stoi(kv.at("reps"));
    if (kv.count("seed")) sc.seed = std::stoull(kv.at("seed"));
    if (kv.count("quantiles")) {
        sc.quantiles.clear();
        std::stringstream ss(kv.at("quantiles"));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            sc.quantiles.push_back(std::stod(tok));
        }
    }
    if (sc.replicates <= 0 || sc.N <= 0) {
        throw std::runtime_error("N and reps must be positive");
    }
    return sc;
}

int cmd_simulate(const std::string& input, const std::string& output,
                 bool seed_given, std::uint64_t seed) {
    Scenario sc;
    try {
        sc = parse_scenario(input);
    } catch (const std::exception& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return kExitBadInput;
    }
    if (seed_given) {
        sc.seed = seed;
    }
    ReportTable table;
    try {
        table = run_scenario(sc);
    } catch (const std::exception& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return kExitNoConvergence;
    }
    std::cout << table.to_text();
    if (!output.empty()) {
        write_file(output, table.to_csv());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-concave distribution function estimation for "
                 "interval-censored data"};
    app.require_subcommand(1);

    std::string input, output;
    double eta = 1e-10;
    std::uint64_t seed = 0;
    int grid_points = 500;
    std::vector<double> probs;

    auto* fit_cmd = app.add_subcommand("fit", "fit from a left,right CSV");
    fit_cmd->add_option("--input", input)->required();
    fit_cmd->add_option("--output", output);
    fit_cmd->add_option("--eta", eta);

    auto* q_cmd = app.add_subcommand("quantile", "query quantiles of a fit");
    q_cmd->add_option("--input", input)->required();
    q_cmd->add_option("--p", probs)->required()->delimiter(',');

    auto* plot_cmd =
        app.add_subcommand("plot-data", "emit a dense curve table from a fit");
    plot_cmd->add_option("--input", input)->required();
    plot_cmd->add_option("--output", output);
    plot_cmd->add_option("--grid-points", grid_points);

    auto* sim_cmd =
        app.add_subcommand("simulate", "run a Monte Carlo scenario config");
    sim_cmd->add_option("--input", input)->required();
    sim_cmd->add_option("--output", output);
    auto* seed_opt = sim_cmd->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    if (fit_cmd->parsed()) {
        return cmd_fit(input, output, eta);
    }
    if (q_cmd->parsed()) {
        return cmd_quantile(input, probs);
    }
    if (plot_cmd->parsed()) {
        return cmd_plot_data(input, output, grid_points);
    }
    if (sim_cmd->parsed()) {
        return cmd_simulate(input, output, seed_opt->count() > 0, seed);
    }
    return 1;
}

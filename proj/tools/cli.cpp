#include "cli.hpp"

#include "essig/checks.hpp"
#include "essig/disk.hpp"
#include "essig/errors.hpp"
#include "essig/interval.hpp"
#include "essig/io.hpp"
#include "essig/lattice.hpp"
#include "essig/mc.hpp"
#include "essig/random.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace essig::cli {

namespace {

using io::json;

struct RunConfig {
    std::optional<int> truncation;
    std::string scalar = "rational";
    std::string out_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;

    std::vector<std::string> eval;
    std::vector<std::string> center;
    std::optional<std::string> radius;
    std::vector<double> start{0.0, 0.0};

    std::string input;
    std::optional<std::size_t> paths;
    double dt = 1e-3;
    std::size_t batch_size = 1000;
    std::string dump;
    bool report = false;
};

[[noreturn]] void invalid(const std::string& message) { throw UsageError(message); }

ScalarKind scalar_kind(const RunConfig& cfg) {
    try {
        return parse_scalar_kind(cfg.scalar);
    } catch (const ParseError&) {
        invalid("--scalar must be 'rational' or 'float64'");
    }
}

int truncation_or(const RunConfig& cfg, int fallback) {
    const int n = cfg.truncation.value_or(fallback);
    if (n < 0) invalid("truncation must be non-negative");
    return n;
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
    if (cfg.seed) return *cfg.seed;
    if (const char* env = std::getenv("ESSIG_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        invalid("ESSIG_SEED must be a non-negative integer");
    }
    return 0;
}

void validate_format(const RunConfig& cfg) {
    if (cfg.format != "json" && cfg.format != "csv") invalid("--format must be 'json' or 'csv'");
}

/// Writes to --out when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + cfg.out_path + "'");
    file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::array<Rational, 2> parse_pair(const std::vector<std::string>& values, const char* flag) {
    if (values.size() != 2) invalid(std::string(flag) + " takes exactly two values");
    try {
        return {parse_rational(values[0]), parse_rational(values[1])};
    } catch (const ParseError& e) {
        invalid(std::string(flag) + ": " + e.what());
    }
}

Rational parse_scalar_arg(const std::string& value, const char* flag) {
    try {
        return parse_rational(value);
    } catch (const ParseError& e) {
        invalid(std::string(flag) + ": " + e.what());
    }
}

json point_json(const std::array<Rational, 2>& p) { return json::array({to_string(p[0]), to_string(p[1])}); }

int cmd_disk(const RunConfig& cfg, std::ostream& out) {
    const int n = truncation_or(cfg, 4);
    const ScalarKind kind = scalar_kind(cfg);
    validate_format(cfg);
    std::array<Rational, 2> center{Rational(0), Rational(0)};
    Rational radius(1);
    if (!cfg.center.empty()) center = parse_pair(cfg.center, "--center");
    if (cfg.radius) radius = parse_scalar_arg(*cfg.radius, "--radius");
    if (radius <= 0) invalid("--radius must be positive");
    std::optional<std::array<Rational, 2>> point;
    if (!cfg.eval.empty()) {
        point = parse_pair(cfg.eval, "--eval");
        const Rational dx = (*point)[0] - center[0];
        const Rational dy = (*point)[1] - center[1];
        if (dx * dx + dy * dy > radius * radius) invalid("--eval point lies outside the disk");
    }

    const PolyTensor phi = expected_signature_disk(n);
    if (!point) {
        if (cfg.format == "csv") {
            std::ostringstream os;
            io::write_csv(os, phi);
            emit(cfg, out, os.str());
        } else {
            emit(cfg, out, dump(io::to_json(phi)));
        }
        return 0;
    }

    json value;
    std::ostringstream csv;
    if (kind == ScalarKind::rational) {
        const auto t = transport<Rational>(phi, center, radius, *point);
        value = io::to_json(t);
        io::write_csv(csv, t);
    } else {
        const auto t = transport<double>(phi, {to_double(center[0]), to_double(center[1])}, to_double(radius),
                                         {to_double((*point)[0]), to_double((*point)[1])});
        value = io::to_json(t);
        io::write_csv(csv, t);
    }
    if (cfg.format == "csv") {
        emit(cfg, out, csv.str());
    } else {
        json doc = {{"phi", io::to_json(phi)},
                    {"evaluation",
                     {{"point", point_json(*point)},
                      {"center", point_json(center)},
                      {"radius", to_string(radius)},
                      {"value", std::move(value)}}}};
        emit(cfg, out, dump(doc));
    }
    return 0;
}

int cmd_interval(const RunConfig& cfg, std::ostream& out) {
    const int n = truncation_or(cfg, 4);
    const ScalarKind kind = scalar_kind(cfg);
    validate_format(cfg);
    Rational center(0);
    Rational radius(1);
    if (cfg.center.size() > 1) invalid("--center takes one value for the interval");
    if (!cfg.center.empty()) center = parse_scalar_arg(cfg.center[0], "--center");
    if (cfg.radius) radius = parse_scalar_arg(*cfg.radius, "--radius");
    if (radius <= 0) invalid("--radius must be positive");
    std::optional<Rational> x;
    if (cfg.eval.size() > 1) invalid("--eval takes one value for the interval");
    if (!cfg.eval.empty()) {
        x = parse_scalar_arg(cfg.eval[0], "--eval");
        if (abs(*x - center) > radius) invalid("--eval point lies outside the interval");
    }

    const auto levels = interval::ode_recursion(n);
    if (cfg.format == "csv") {
        std::ostringstream os;
        if (x) {
            os << "level,value\n";
            for (int k = 0; k <= n; ++k) {
                const Rational v = interval::transport_level(levels, k, center, radius, *x);
                os << k << ',';
                if (kind == ScalarKind::rational)
                    os << to_string(v);
                else
                    os << json(to_double(v)).dump();
                os << '\n';
            }
        } else {
            os << "level,power,coeff\n";
            for (int k = 0; k <= n; ++k) {
                const auto& c = levels[static_cast<std::size_t>(k)].coeffs();
                for (std::size_t i = 0; i < c.size(); ++i)
                    if (c[i] != 0) os << k << ',' << i << ',' << to_string(c[i]) << '\n';
            }
        }
        emit(cfg, out, os.str());
        return 0;
    }
    json doc = io::to_json(levels);
    if (x) {
        json values = json::array();
        for (int k = 0; k <= n; ++k) {
            const Rational v = interval::transport_level(levels, k, center, radius, *x);
            values.push_back({{"level", k},
                              {"value", kind == ScalarKind::rational ? json(to_string(v)) : json(to_double(v))}});
        }
        doc["evaluation"] = {{"x", to_string(*x)},
                             {"center", to_string(center)},
                             {"radius", to_string(radius)},
                             {"scalar", std::string(to_string(kind))},
                             {"values", std::move(values)}};
    }
    emit(cfg, out, dump(doc));
    return 0;
}

template <Scalar T>
void write_lattice(const RunConfig& cfg, std::ostream& out, const lattice::LatticeField<T>& field) {
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "point,level,word,value\n";
        const auto& domain = field.domain();
        for (std::size_t i = 0; i < domain.closure_size(); ++i) {
            std::ostringstream rows;
            io::write_csv(rows, field.at(i));
            std::istringstream lines(rows.str());
            std::string line;
            std::getline(lines, line);  // header
            while (std::getline(lines, line)) os << '"' << lattice::point_key(domain.point(i)) << "\"," << line << '\n';
        }
        emit(cfg, out, os.str());
    } else {
        emit(cfg, out, dump(io::to_json(field)));
    }
}

int cmd_lattice(const RunConfig& cfg, std::ostream& out) {
    const ScalarKind kind = scalar_kind(cfg);
    validate_format(cfg);
    if (cfg.input.empty()) invalid("lattice needs a domain file");
    std::ifstream file(cfg.input);
    if (!file) invalid("cannot open domain file '" + cfg.input + "'");
    const auto parsed = lattice::read_domain(file);
    const int n = truncation_or(cfg, parsed.truncation);
    if (kind == ScalarKind::rational)
        write_lattice(cfg, out, lattice::expected_signature_lattice<Rational>(parsed.domain, n));
    else
        write_lattice(cfg, out, lattice::expected_signature_lattice<double>(parsed.domain, n));
    return 0;
}

int cmd_mc(const RunConfig& cfg, std::ostream& out) {
    const int n = truncation_or(cfg, 4);
    validate_format(cfg);
    if (cfg.scalar != "float64" && cfg.scalar != "rational") scalar_kind(cfg);
    mc::Disk disk;
    if (!cfg.center.empty()) {
        const auto c = parse_pair(cfg.center, "--center");
        disk.center = {to_double(c[0]), to_double(c[1])};
    }
    if (cfg.radius) disk.radius = to_double(parse_scalar_arg(*cfg.radius, "--radius"));
    if (!(disk.radius > 0.0)) invalid("--radius must be positive");
    if (cfg.start.size() != 2) invalid("--start takes exactly two values");
    const std::array<double, 2> z{cfg.start[0], cfg.start[1]};
    const double dx = z[0] - disk.center[0];
    const double dy = z[1] - disk.center[1];
    if (dx * dx + dy * dy > disk.radius * disk.radius) invalid("--start lies outside the disk");
    if (!(cfg.dt > 0.0)) invalid("--dt must be positive");

    mc::McOptions options;
    options.paths = cfg.paths.value_or(1000);
    if (options.paths < 1) invalid("--paths must be at least 1");
    options.dt = cfg.dt;
    options.seed = resolve_seed(cfg);
    options.batch_size = cfg.batch_size;
    if (options.batch_size == 0) invalid("--batch-size must be positive");
    options.threads = std::max(1u, cfg.threads);

    if (!cfg.dump.empty()) {
        auto rng = make_stream(options.seed, 0);
        const auto path = mc::sample_bm_exit(z, disk, options.dt, rng);
        std::ofstream dump_file(cfg.dump);
        if (!dump_file) throw std::runtime_error("cannot open dump file '" + cfg.dump + "'");
        mc::write_path(dump_file, path);
    }

    const auto est = mc::estimate_phi(z, disk, n, options);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "level,word,mean,standard_error\n";
        for (int k = 0; k <= n; ++k) {
            auto mean = est.mean.level(k);
            auto se = est.standard_error.level(k);
            for (std::size_t i = 0; i < mean.size(); ++i)
                os << k << ',' << Word::from_index(i, k, 2).str() << ',' << json(mean[i]).dump() << ','
                   << json(se[i]).dump() << '\n';
        }
        emit(cfg, out, os.str());
    } else {
        json doc = io::to_json(est);
        doc["start"] = {z[0], z[1]};
        doc["center"] = {disk.center[0], disk.center[1]};
        doc["radius"] = disk.radius;
        doc["batch_size"] = options.batch_size;
        emit(cfg, out, dump(doc));
    }
    return 0;
}

int cmd_sig(const RunConfig& cfg, std::ostream& out) {
    const int n = truncation_or(cfg, 4);
    const ScalarKind kind = scalar_kind(cfg);
    validate_format(cfg);
    if (cfg.input.empty()) invalid("sig needs a path file");
    std::ifstream file(cfg.input);
    if (!file) invalid("cannot open path file '" + cfg.input + "'");

    std::ostringstream os;
    if (kind == ScalarKind::float64) {
        const auto path = mc::read_path(file);
        const auto sig = mc::signature_of_path(path, n);
        if (cfg.format == "csv")
            io::write_csv(os, sig);
        else
            os << dump(io::to_json(sig));
    } else {
        // Exact: coordinates are read as decimal or p/q literals; timestamps are ignored.
        std::vector<std::vector<Rational>> points;
        std::string line;
        int line_no = 0;
        while (std::getline(file, line)) {
            ++line_no;
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            std::istringstream fields(line);
            std::string token;
            std::vector<Rational> row;
            bool time_column = true;
            while (fields >> token) {
                Rational v;
                try {
                    v = parse_rational(token);
                } catch (const ParseError& e) {
                    throw ParseError("path file line " + std::to_string(line_no) + ": " + e.what());
                }
                if (time_column)
                    time_column = false;
                else
                    row.push_back(v);
            }
            if (row.empty()) throw ParseError("path file line " + std::to_string(line_no) + ": expected 't x1 ...'");
            if (!points.empty() && row.size() != points.front().size())
                throw ParseError("path file line " + std::to_string(line_no) + ": inconsistent dimension");
            points.push_back(std::move(row));
        }
        if (points.empty()) throw ParseError("path file contains no points");
        const auto sig = mc::signature_of_points<Rational>(points, n);
        if (cfg.format == "csv")
            io::write_csv(os, sig);
        else
            os << dump(io::to_json(sig));
    }
    emit(cfg, out, os.str());
    return 0;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    const auto names = checks::suite_names();
    if (std::find(names.begin(), names.end(), cfg.input) == names.end()) invalid("unknown check suite '" + cfg.input + "'");
    checks::CheckConfig check;
    check.truncation = truncation_or(cfg, cfg.input == "lattice-mc" ? 4 : 6);
    if (cfg.input == "residual" || cfg.input == "boundary-factor") {
        if (check.truncation < 2) invalid("this suite needs truncation >= 2");
    }
    if (cfg.input == "chen" && check.truncation < 1) invalid("chen needs truncation >= 1");
    check.paths = cfg.paths.value_or(cfg.input == "lattice-mc" ? 100000 : 100);
    if (check.paths < 1) invalid("--paths must be at least 1");
    if (cfg.input == "lattice-mc" && check.paths < 2) invalid("lattice-mc needs at least 2 walks");
    check.seed = resolve_seed(cfg);
    check.threads = std::max(1u, cfg.threads);

    const auto report = checks::run_check(cfg.input, check);
    if (cfg.report) {
        json doc = {{"suite", report.name},
                    {"passed", report.passed},
                    {"details", report.details},
                    {"metrics", report.metrics}};
        emit(cfg, out, dump(doc));
    } else {
        std::ostringstream os;
        os << (report.passed ? "[PASS] " : "[FAIL] ") << report.name << '\n';
        for (const auto& d : report.details) os << "  " << d << '\n';
        emit(cfg, out, os.str());
    }
    return report.passed ? 0 : 1;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("-N,--truncation", cfg.truncation, "Truncation level");
    sub->add_option("--scalar", cfg.scalar, "Scalar kind: rational | float64");
    sub->add_option("-o,--out", cfg.out_path, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "Output format: json | csv");
    sub->add_option("--seed", cfg.seed, "Master seed (falls back to ESSIG_SEED, then 0)");
    sub->add_option("--threads", cfg.threads, "Worker thread cap");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Expected signatures of stopped Brownian motion and random walks", "essig"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* disk = app.add_subcommand("disk", "Exact expected signature on the unit disk");
    add_common(disk, cfg);
    disk->add_option("--eval", cfg.eval, "Evaluate at z1 z2")->expected(2);
    disk->add_option("--center", cfg.center, "Disk centre c1 c2")->expected(2);
    disk->add_option("--radius", cfg.radius, "Disk radius");

    auto* interval = app.add_subcommand("interval", "Exact expected signature on [-1, 1]");
    add_common(interval, cfg);
    interval->add_option("--eval", cfg.eval, "Evaluate at x")->expected(1);
    interval->add_option("--center", cfg.center, "Interval centre")->expected(1);
    interval->add_option("--radius", cfg.radius, "Interval half-width");

    auto* lattice = app.add_subcommand("lattice", "Expected signature of the simple random walk on a lattice domain");
    add_common(lattice, cfg);
    lattice->add_option("domain", cfg.input, "Domain file")->required();

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate on a disk");
    add_common(mc, cfg);
    mc->add_option("--start", cfg.start, "Starting point z1 z2")->expected(2);
    mc->add_option("--center", cfg.center, "Disk centre c1 c2")->expected(2);
    mc->add_option("--radius", cfg.radius, "Disk radius");
    mc->add_option("--paths", cfg.paths, "Number of sample paths");
    mc->add_option("--dt", cfg.dt, "Time step");
    mc->add_option("--batch-size", cfg.batch_size, "Paths per RNG batch");
    mc->add_option("--dump", cfg.dump, "Write the first sampled path to this file");

    auto* sig = app.add_subcommand("sig", "Truncated signature of a piecewise-linear path file");
    add_common(sig, cfg);
    sig->add_option("path", cfg.input, "Path file ('t x1 x2' per line)")->required();

    auto* check = app.add_subcommand("check", "Run a verification suite");
    add_common(check, cfg);
    check->add_option("suite", cfg.input, "residual | boundary-factor | chen | rotation | meanvalue | lattice-mc | interval-oracle")
        ->required();
    check->add_option("--paths", cfg.paths, "Random paths (chen) or walks per point (lattice-mc)");
    check->add_flag("--report", cfg.report, "Emit a JSON report");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "essig: " << msg << '\n';
        return 2;
    }

    try {
        if (disk->parsed()) return cmd_disk(cfg, out);
        if (interval->parsed()) return cmd_interval(cfg, out);
        if (lattice->parsed()) return cmd_lattice(cfg, out);
        if (mc->parsed()) return cmd_mc(cfg, out);
        if (sig->parsed()) return cmd_sig(cfg, out);
        if (check->parsed()) return cmd_check(cfg, out);
    } catch (const UsageError& e) {
        err << "essig: invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "essig: error: " << msg << '\n';
        return 1;
    }
    return 2;
}

}  // namespace essig::cli

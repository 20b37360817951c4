// pomq command-line front end: build quantizers from a JSON config (with flag
// overrides), run computations, and emit CSV/JSON/PGM artifacts.
//
// Exit codes: 0 ok, 2 config/validation error, 3 numerical-tolerance failure,
// 4 no-solution (operator spectrum outside [0,1]).

#include <CLI11.hpp>
#include <json.hpp>
#include <pomq/pomq.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;
using namespace pomq;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitNoSolution = 4;

struct RunConfig {
    TruncationConfig trunc;
    PhaseGrid grid;
    std::string map = "a";  // "a" | "weyl"
    std::string generating = "fock:0";
    std::string function = "monomial:1:0";
    std::string state = "fock:0";
    int64_t seed = 12345;
    uint64_t n = 100000;
    int k_max = 3;
    std::string out_dir = ".";
};

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, delim)) out.push_back(item);
    return out;
}

double parse_endpoint(const std::string& s) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::stod(s);
}

// "[a,b]", "(-inf,c]", "[d,inf)", "R", unions joined with 'u'.
BorelSet1D parse_borel(const std::string& spec) {
    if (spec == "R" || spec == "r") return BorelSet1D::real_line();
    BorelSet1D out;
    for (const std::string& part : split(spec, 'u')) {
        if (part.size() < 5) throw std::invalid_argument("bad interval: " + part);
        bool lo_closed = part.front() == '[';
        bool hi_closed = part.back() == ']';
        if ((part.front() != '[' && part.front() != '(') ||
            (part.back() != ']' && part.back() != ')'))
            throw std::invalid_argument("bad interval: " + part);
        auto ends = split(part.substr(1, part.size() - 2), ',');
        if (ends.size() != 2) throw std::invalid_argument("bad interval: " + part);
        out = out.unite(BorelSet1D::interval(parse_endpoint(ends[0]),
                                             parse_endpoint(ends[1]), lo_closed, hi_closed));
    }
    return out;
}

PhaseSpaceFunction parse_function(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty function spec");
    if (parts[0] == "constant") return PhaseSpaceFunction::constant_one();
    if (parts[0] == "monomial") {
        if (parts.size() != 3) throw std::invalid_argument("monomial:a:b");
        return PhaseSpaceFunction::monomial(std::stoi(parts[1]), std::stoi(parts[2]));
    }
    if (parts[0] == "arrival-time") return PhaseSpaceFunction::arrival_time();
    if (parts[0] != "indicator" || parts.size() < 2)
        throw std::invalid_argument("unknown function spec: " + spec);
    const std::string& kind = parts[1];
    if (kind == "rect") {
        if (parts.size() != 3) throw std::invalid_argument("indicator:rect:QSPECxPSPEC");
        auto sides = split(parts[2], 'x');
        if (sides.size() != 2) throw std::invalid_argument("rect needs QSPECxPSPEC");
        return PhaseSpaceFunction::indicator(
            Rectangle{parse_borel(sides[0]), parse_borel(sides[1])});
    }
    if (kind == "halfplane") {
        if (parts.size() != 4) throw std::invalid_argument("indicator:halfplane:deg:offset");
        return PhaseSpaceFunction::indicator(
            HalfPlane{std::stod(parts[2]) * kPi / 180.0, std::stod(parts[3])});
    }
    if (kind == "sector") {
        if (parts.size() != 4) throw std::invalid_argument("indicator:sector:deg:deg");
        return PhaseSpaceFunction::indicator(
            Sector{std::stod(parts[2]) * kPi / 180.0, std::stod(parts[3]) * kPi / 180.0});
    }
    if (kind == "disc") {
        if (parts.size() != 5) throw std::invalid_argument("indicator:disc:q:p:r");
        return PhaseSpaceFunction::indicator(
            Disc{std::stod(parts[2]), std::stod(parts[3]), std::stod(parts[4])});
    }
    throw std::invalid_argument("unknown indicator region: " + kind);
}

GeneratingOperator parse_generating(const std::string& spec, int dim) {
    auto parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "fock")
        return GeneratingOperator::fock_projector(dim, std::stoi(parts[1]));
    if (parts.size() == 2 && parts[0] == "diag") {
        std::vector<double> w;
        for (const auto& s : split(parts[1], ',')) w.push_back(std::stod(s));
        return GeneratingOperator::fock_diagonal(dim, w);
    }
    if (parts.size() == 2 && parts[0] == "file") {
        std::ifstream f(parts[1]);
        if (!f) throw std::invalid_argument("cannot open matrix file " + parts[1]);
        return GeneratingOperator(read_matrix_csv(f));
    }
    throw std::invalid_argument("generating operator spec: fock:N | diag:w,... | file:PATH");
}

FockState parse_state(const std::string& spec, int dim) {
    auto parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "fock")
        return FockState::basis(dim, std::stoi(parts[1]));
    if (parts.size() == 2 && parts[0] == "file") {
        std::ifstream f(parts[1]);
        if (!f) throw std::invalid_argument("cannot open state file " + parts[1]);
        json j = json::parse(f);
        Vector c = Vector::Zero(dim);
        for (size_t i = 0; i < j.size() && i < static_cast<size_t>(dim); ++i)
            c[i] = Complex(j[i][0].get<double>(), j[i][1].get<double>());
        c.normalize();
        return FockState(c);
    }
    throw std::invalid_argument("state spec: fock:N | file:PATH");
}

RunConfig load_config(const std::string& path) {
    RunConfig rc;
    if (path.empty()) return rc;
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config " + path);
    json j = json::parse(f);
    if (j.contains("truncation")) rc.trunc = truncation_from_json(j["truncation"]);
    if (j.contains("grid")) rc.grid = grid_from_json(j["grid"]);
    rc.map = j.value("map", rc.map);
    rc.generating = j.value("generating_operator", rc.generating);
    rc.function = j.value("function", rc.function);
    rc.state = j.value("state", rc.state);
    rc.seed = j.value("seed", rc.seed);
    rc.n = j.value("n", rc.n);
    rc.k_max = j.value("k_max", rc.k_max);
    rc.out_dir = j.value("out_dir", rc.out_dir);
    return rc;
}

json config_envelope(const RunConfig& rc) {
    return {{"schema_version", kSchemaVersion},
            {"truncation", to_json(rc.trunc)},
            {"grid", to_json(rc.grid)},
            {"map", rc.map},
            {"generating_operator", rc.generating},
            {"function", rc.function},
            {"state", rc.state},
            {"seed", rc.seed},
            {"n", rc.n},
            {"k_max", rc.k_max},
            {"out_dir", rc.out_dir}};
}

void write_text(const fs::path& p, const std::string& s) {
    fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string());
    f << s;
}

int cmd_quantize(const RunConfig& rc) {
    PhaseSpaceFunction f = parse_function(rc.function);
    HermitianOperator op;
    if (rc.map == "weyl") {
        QuantizerWeyl g(rc.trunc, rc.grid);
        op = g.quantize(f);
    } else if (rc.map == "a") {
        QuantizerA g(rc.trunc, parse_generating(rc.generating, rc.trunc.dim), rc.grid);
        op = g.quantize(f);
    } else {
        throw std::invalid_argument("map must be 'a' or 'weyl'");
    }
    EffectReport rep = effect_report(op);
    fs::create_directories(rc.out_dir);
    std::ostringstream csv;
    write_matrix_csv(csv, op.entries);
    write_text(fs::path(rc.out_dir) / "operator.csv", csv.str());
    json env = operator_envelope(rc.trunc, rc.grid, rc.map, rc.function, rep);
    env["config"] = config_envelope(rc);
    write_text(fs::path(rc.out_dir) / "envelope.json", env.dump(2) + "\n");
    std::cout << "operator written: " << (fs::path(rc.out_dir) / "operator.csv").string()
              << "\neffect report: min_eig=" << rep.min_eig << " max_eig=" << rep.max_eig
              << " proj_defect=" << rep.proj_defect << "\n";
    if (!rep.is_effect())
        std::cout << "note: spectrum outside [0,1]; question quantization of this "
                     "operator would fail (no POM has this constant moment sequence)\n";
    return 0;
}

int cmd_field(const RunConfig& rc, bool husimi) {
    FockState phi = parse_state(rc.state, rc.trunc.dim);
    Field fld = husimi ? generalized_distribution(parse_generating(rc.generating, rc.trunc.dim),
                                                  phi, rc.grid, rc.trunc.tail_tol)
                       : wigner_transform(phi, rc.grid, rc.trunc.tail_tol);
    fs::create_directories(rc.out_dir);
    std::ostringstream csv, pgm;
    write_field_csv(csv, fld);
    write_field_pgm(pgm, fld);
    std::string stem = husimi ? "husimi" : "wigner";
    write_text(fs::path(rc.out_dir) / (stem + ".csv"), csv.str());
    write_text(fs::path(rc.out_dir) / (stem + ".pgm"), pgm.str());
    std::cout << stem << " field written; min=" << fld.min_value()
              << " max=" << fld.max_value()
              << " normalization (1/2pi integral)=" << fld.integral() / (2.0 * kPi) << "\n";
    return 0;
}

int cmd_sample(const RunConfig& rc) {
    PhaseSpaceFunction f = parse_function(rc.function);
    FockState phi = parse_state(rc.state, rc.trunc.dim);
    HermitianOperator a;
    if (rc.map == "weyl") {
        QuantizerWeyl g(rc.trunc, rc.grid);
        a = g.quantize(f);
    } else {
        QuantizerA g(rc.trunc, parse_generating(rc.generating, rc.trunc.dim), rc.grid);
        a = g.quantize(f);
    }
    DiscretePOM pom = quantize_question(a, rc.trunc.eig_tol);
    SampleReport rep = sample_outcomes(pom, phi, rc.n, rc.seed, rc.k_max);
    fs::create_directories(rc.out_dir);
    json j = to_json(rep);
    j["config"] = config_envelope(rc);
    write_text(fs::path(rc.out_dir) / "sample.json", j.dump(2) + "\n");
    std::ostringstream csv;
    write_counts_csv(csv, rep);
    write_text(fs::path(rc.out_dir) / "counts.csv", csv.str());
    std::cout << "sampled n=" << rep.n << "; empirical mean=" << rep.empirical_moments[0]
              << " predicted=" << rep.predicted_moments[0]
              << " std_error=" << rep.std_errors[0] << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify: the invariant suite

struct CheckResult {
    std::string group;
    std::string name;
    bool pass;
    double measured;
    double bound;
};

void run_verify_checks(const RunConfig& rc, const std::string& only,
                       std::vector<CheckResult>& out) {
    const TruncationConfig& cfg = rc.trunc;
    const int d = cfg.dim;
    const int kb = cfg.block();
    auto want = [&](const std::string& group) { return only.empty() || only == group; };
    auto add = [&](const std::string& group, const std::string& name, double measured,
                   double bound) {
        out.push_back({group, name, measured <= bound, measured, bound});
    };

    Matrix Q = build_position(cfg).entries;
    Matrix P = build_momentum(cfg).entries;
    Matrix Par = build_parity(cfg).entries;
    Matrix F = build_fourier(cfg).entries;
    Matrix I = Matrix::Identity(d, d);

    if (want("fock-core")) {
        add("fock-core", "parity involution", (Par * Par - I).cwiseAbs().maxCoeff(), 1e-12);
        add("fock-core", "fourier order four",
            (F * F * F * F - I).cwiseAbs().maxCoeff(), 1e-12);
        add("fock-core", "parity = F^2", (F * F - Par).cwiseAbs().maxCoeff(), 1e-12);
        int kc = std::max(1, d - 2);
        Matrix comm = (Q * P - P * Q).topLeftCorner(kc, kc) -
                      Complex(0, 1) * Matrix::Identity(kc, kc);
        add("fock-core", "canonical commutator (block)", comm.cwiseAbs().maxCoeff(), 1e-10);
        Matrix fqf = (F * Q * F.adjoint()).topLeftCorner(kc, kc);
        add("fock-core", "F Q F^dag = -P (block)",
            (fqf + P.topLeftCorner(kc, kc)).cwiseAbs().maxCoeff(), 1e-12);
    }

    if (want("weyl")) {
        double worst_unitary = 0.0, worst_agree = 0.0;
        for (PhasePoint pt : {PhasePoint{6, 6}, PhasePoint{-4.5, 2.0}, PhasePoint{1.0, -0.3}}) {
            Matrix w = weyl_operator(pt, cfg);
            worst_unitary = std::max(worst_unitary,
                                     (w.adjoint() * w - I).cwiseAbs().maxCoeff());
            worst_agree = std::max(worst_agree,
                                   (w - weyl_operator_product(pt, cfg)).cwiseAbs().maxCoeff());
        }
        add("weyl", "unitarity", worst_unitary, 1e-10);
        add("weyl", "product/exponential agreement (truncation tail)", worst_agree, 1e-8);
        PhasePoint a{1.2, -0.4}, b{-0.7, 0.9};
        Matrix wab = weyl_operator(a, cfg) * weyl_operator(b, cfg);
        Matrix ws = weyl_operator({a.q + b.q, a.p + b.p}, cfg);
        Matrix rel = wab * ws.adjoint();
        Complex phase = rel(0, 0) / std::abs(rel(0, 0));
        add("weyl", "weyl composition law up to phase",
            (rel - phase * I).topLeftCorner(kb, kb).cwiseAbs().maxCoeff(), 1e-6);
        Matrix w10 = weyl_operator({1.0, 0.0}, cfg);
        Matrix shift = (w10.adjoint() * Q * w10 - Q).topLeftCorner(kb, kb) -
                       Matrix::Identity(kb, kb);
        add("weyl", "W(1,0)^* Q W(1,0) = Q + 1 (block)", shift.cwiseAbs().maxCoeff(), 1e-8);
    }

    if (want("wigner") || want("husimi")) {
        PhaseGrid fg(-8, 8, -8, 8, 129, 129, PhaseGrid::Rule::MidpointUniform);
        TruncationConfig loose = cfg;
        loose.tail_tol = 0.5;
        if (want("wigner")) {
            Field w0 = wigner_transform(FockState::basis(d, 0), fg, loose.tail_tol);
            add("wigner", "h0 nonnegative", -w0.min_value(), 1e-10);
            add("wigner", "h0 normalization (= pi)", std::abs(w0.integral() - kPi), 1e-6);
            Field w1 = wigner_transform(FockState::basis(d, 1), fg, loose.tail_tol);
            add("wigner", "h1 attains < -0.5", w1.min_value(), -0.5);
        }
        if (want("husimi")) {
            GeneratingOperator t0 = GeneratingOperator::fock_projector(d, 0);
            for (int lvl : {0, std::min(2, d - 1)}) {
                Field h = generalized_distribution(t0, FockState::basis(d, lvl), fg,
                                                   loose.tail_tol);
                add("husimi", "h" + std::to_string(lvl) + " nonnegative", -h.min_value(),
                    1e-10);
                add("husimi", "h" + std::to_string(lvl) + " normalization",
                    std::abs(h.integral() / (2 * kPi) - 1.0), 1e-6);
            }
        }
    }

    // quantitative type-(a)/weyl identities need a grid that holds the block
    // levels; derive one from dim rather than the field grid
    double R = classical_radius(kb + 2) + 6.5;
    int nodes = static_cast<int>(std::ceil(R * 32));
    PhaseGrid wide(-R, R, -R, R, nodes, nodes, PhaseGrid::Rule::GaussLegendreTensor);
    TruncationConfig tight = cfg;

    if (want("effects")) {
        QuantizerA g(tight, GeneratingOperator::fock_projector(d, 0), wide);
        auto hp = PhaseSpaceFunction::indicator(HalfPlane{0.0, 0.0});
        HermitianOperator e = g.quantize(hp);
        EffectReport rep = effect_report(e);
        add("effects", "halfplane effect lower bound", -rep.min_eig, 1e-8);
        add("effects", "halfplane effect upper bound", rep.max_eig - 1.0, 1e-8);
        add("effects", "never a nontrivial projection", 1e-3 - rep.proj_defect, 0.0);
        auto hpc = PhaseSpaceFunction::indicator(HalfPlane{kPi, 0.0});
        HermitianOperator ec = g.quantize(hpc);
        add("effects", "complementation",
            (e.entries + ec.entries - I).topLeftCorner(kb, kb).cwiseAbs().maxCoeff(), 1e-8);
    }

    if (want("marginal-identities")) {
        QuantizerWeyl g(tight, wide);
        BorelSet1D b = BorelSet1D::interval(-1.0, 2.0);
        HermitianOperator got = g.quantize(PhaseSpaceFunction::indicator(
            Rectangle{b, BorelSet1D::real_line()}));
        HermitianOperator ref = position_spectral_measure(cfg, b);
        add("marginal-identities", "Gamma^P(chi_BxR) = E^Q(B) (block)",
            (got.entries - ref.entries).topLeftCorner(kb, kb).cwiseAbs().maxCoeff(), 1e-5);
        HermitianOperator gotp = g.quantize(PhaseSpaceFunction::indicator(
            Rectangle{BorelSet1D::real_line(), b}));
        HermitianOperator refp = momentum_spectral_measure(cfg, b);
        add("marginal-identities", "Gamma^P(chi_RxB) = E^P(B) (block)",
            (gotp.entries - refp.entries).topLeftCorner(kb, kb).cwiseAbs().maxCoeff(), 1e-5);
        for (int k : {1, 2}) {
            HermitianOperator mono = g.quantize(PhaseSpaceFunction::monomial(k, 0));
            Matrix qk = k == 1 ? Q : Matrix(Q * Q);
            add("marginal-identities", "Gamma^P(x^" + std::to_string(k) + ") = Q^k (block)",
                (mono.entries - qk).topLeftCorner(kb, kb).cwiseAbs().maxCoeff(), 1e-5);
        }
    }

    if (want("cylinder")) {
        QuantizerA g(tight, GeneratingOperator::fock_projector(d, 0), wide);
        BorelSet1D b = BorelSet1D::interval(-1.0, 1.0);
        HermitianOperator fast = g.quantize_cylinder(Axis::Position, b);
        HermitianOperator slow = g.quantize(PhaseSpaceFunction::indicator(
            Rectangle{b, BorelSet1D::real_line()}));
        add("cylinder", "fast path vs 2-D quadrature (block)",
            (fast.entries - slow.entries).topLeftCorner(kb, kb).cwiseAbs().maxCoeff(), 1e-6);
    }

    if (want("sampling")) {
        GeneratingOperator t0 = GeneratingOperator::fock_projector(d, 0);
        QuantizerA g(tight, t0, wide);
        auto rep = moment_transfer_check(
            g, PhaseSpaceFunction::indicator(HalfPlane{0.0, 0.0}), FockState::basis(d, 0), 3,
            200000, rc.seed);
        add("sampling", "moment transfer within 5 sigma", rep.max_deviation_sigmas, 5.0);
        auto r1 = sample_outcomes(quantize_question(HermitianOperator(0.5 * I)),
                                  FockState::basis(d, 0), 10000, rc.seed);
        auto r2 = sample_outcomes(quantize_question(HermitianOperator(0.5 * I)),
                                  FockState::basis(d, 0), 10000, rc.seed);
        add("sampling", "determinism",
            std::abs(r1.empirical_moments[0] - r2.empirical_moments[0]), 0.0);
    }
}

int cmd_verify(const RunConfig& rc, const std::string& only) {
    std::vector<CheckResult> results;
    std::string message;
    bool numeric_error = false;
    try {
        run_verify_checks(rc, only, results);
    } catch (const TailMassError& e) {
        message = e.what();
        numeric_error = true;
    }
    bool all_pass = !numeric_error;
    json checks = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.group << ": " << r.name
                  << "  (measured " << r.measured << ", bound " << r.bound << ")\n";
        checks.push_back({{"group", r.group},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"measured", r.measured},
                          {"bound", r.bound}});
    }
    if (numeric_error) std::cout << "[FAIL] aborted: " << message << "\n";
    if (results.empty() && !numeric_error) {
        std::cerr << "no checks selected (unknown group '" << only << "')\n";
        return kExitConfig;
    }
    json verdict = {{"schema_version", kSchemaVersion},
                    {"all_pass", all_pass},
                    {"checks", checks},
                    {"config", config_envelope(rc)}};
    if (!message.empty()) verdict["error"] = message;
    fs::create_directories(rc.out_dir);
    write_text(fs::path(rc.out_dir) / "verify.json", verdict.dump(2) + "\n");
    std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return all_pass ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pomq: phase-space quantization on a truncated oscillator basis"};
    app.require_subcommand(1);

    std::string config_path, grid_spec, only;
    RunConfig rc;
    int dim = -1;
    double tail_tol = -1.0, eig_tol = -1.0;

    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--dim", dim, "basis size override");
    app.add_option("--tail-tol", tail_tol, "tail tolerance override");
    app.add_option("--eig-tol", eig_tol, "eigen tolerance override");
    app.add_option("--grid", grid_spec,
                   "grid override qmin:qmax:pmin:pmax:nq:np[:midpoint|gl]");
    app.add_option("--out", rc.out_dir, "output directory");
    app.add_option("--seed", rc.seed, "random seed");
    app.add_option("--n", rc.n, "sample count");

    auto* quantize = app.add_subcommand("quantize", "quantize a classical variable");
    quantize->add_option("--map", rc.map, "a | weyl");
    quantize->add_option("--T", rc.generating, "generating operator (fock:N|diag:...|file:P)");
    quantize->add_option("--function", rc.function, "classical variable spec");

    auto* wigner = app.add_subcommand("wigner", "Wigner function of a state");
    wigner->add_option("--state", rc.state, "state spec (fock:N|file:P)");

    auto* husimi = app.add_subcommand("husimi", "generalized distribution P^T_phi");
    husimi->add_option("--state", rc.state, "state spec");
    husimi->add_option("--T", rc.generating, "generating operator");

    auto* sample = app.add_subcommand("sample", "sample a quantized question");
    sample->add_option("--map", rc.map, "a | weyl");
    sample->add_option("--T", rc.generating, "generating operator");
    sample->add_option("--function", rc.function, "question spec");
    sample->add_option("--state", rc.state, "state spec");
    sample->add_option("--k-max", rc.k_max, "moments to compare");

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--only", only, "restrict to one check group");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        RunConfig loaded = load_config(config_path);
        // CLI flags override file values where given
        loaded.map = rc.map != "a" || !quantize->count("--map") ? loaded.map : rc.map;
        if (quantize->count("--map") || sample->count("--map")) loaded.map = rc.map;
        if (quantize->count("--T") || husimi->count("--T") || sample->count("--T"))
            loaded.generating = rc.generating;
        if (quantize->count("--function") || sample->count("--function"))
            loaded.function = rc.function;
        if (wigner->count("--state") || husimi->count("--state") || sample->count("--state"))
            loaded.state = rc.state;
        if (app.count("--out")) loaded.out_dir = rc.out_dir;
        if (app.count("--seed")) loaded.seed = rc.seed;
        if (app.count("--n")) loaded.n = rc.n;
        if (sample->count("--k-max")) loaded.k_max = rc.k_max;
        if (dim > 0) loaded.trunc.dim = dim;
        if (tail_tol >= 0) loaded.trunc.tail_tol = tail_tol;
        if (eig_tol >= 0) loaded.trunc.eig_tol = eig_tol;
        loaded.trunc.validate();
        if (!grid_spec.empty()) {
            auto p = split(grid_spec, ':');
            if (p.size() < 6) throw std::invalid_argument("grid spec needs 6 fields");
            auto rule = (p.size() > 6 && p[6] == "midpoint")
                            ? PhaseGrid::Rule::MidpointUniform
                            : PhaseGrid::Rule::GaussLegendreTensor;
            loaded.grid = PhaseGrid(std::stod(p[0]), std::stod(p[1]), std::stod(p[2]),
                                    std::stod(p[3]), std::stoi(p[4]), std::stoi(p[5]), rule);
        }

        if (*quantize) return cmd_quantize(loaded);
        if (*wigner) return cmd_field(loaded, false);
        if (*husimi) return cmd_field(loaded, true);
        if (*sample) return cmd_sample(loaded);
        if (*verify) return cmd_verify(loaded, only);
    } catch (const SpectrumOutsideUnitInterval& e) {
        std::cerr << "no-solution: " << e.what() << "\n";
        return kExitNoSolution;
    } catch (const TailMassError& e) {
        std::cerr << "numeric: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numeric: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}

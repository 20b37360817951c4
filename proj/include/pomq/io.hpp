#ifndef POMQ_IO_HPP
#define POMQ_IO_HPP

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core.hpp"
#include "phase_space.hpp"
#include "quadrature.hpp"
#include "quantizer.hpp"
#include "sampling.hpp"

namespace pomq {

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// CSV

// Matrix CSV: header + "row,col,re,im" per entry.
inline void write_matrix_csv(std::ostream& os, const Matrix& m) {
    os << "row,col,re,im\n" << std::setprecision(17);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            os << r << ',' << c << ',' << m(r, c).real() << ',' << m(r, c).imag() << '\n';
}

inline Matrix read_matrix_csv(std::istream& is) {
    std::string line;
    std::getline(is, line);  // header
    std::vector<std::tuple<int, int, Complex>> entries;
    int maxr = -1, maxc = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        int r, c;
        double re, im;
        char comma;
        ss >> r >> comma >> c >> comma >> re >> comma >> im;
        if (!ss) throw std::invalid_argument("matrix CSV: bad row: " + line);
        entries.emplace_back(r, c, Complex(re, im));
        maxr = std::max(maxr, r);
        maxc = std::max(maxc, c);
    }
    if (maxr < 0) throw std::invalid_argument("matrix CSV: empty");
    Matrix m = Matrix::Zero(maxr + 1, maxc + 1);
    for (auto& [r, c, v] : entries) m(r, c) = v;
    return m;
}

// Field CSV: "q,p,value" rows.
inline void write_field_csv(std::ostream& os, const Field& f) {
    os << "q,p,value\n" << std::setprecision(17);
    for (size_t i = 0; i < f.qs.size(); ++i)
        for (size_t j = 0; j < f.ps.size(); ++j)
            os << f.qs[i] << ',' << f.ps[j] << ',' << f.values(i, j) << '\n';
}

// ---------------------------------------------------------------------------
// PGM heatmap (P5, 8-bit); values mapped linearly onto [0,255], mapping
// documented in the header comment.
inline void write_field_pgm(std::ostream& os, const Field& f) {
    double lo = f.min_value(), hi = f.max_value();
    double span = hi > lo ? hi - lo : 1.0;
    os << "P5\n# pomq heatmap: gray = round(255*(value-min)/(max-min)), min="
       << lo << " max=" << hi << ", rows=q descending, cols=p ascending\n"
       << f.ps.size() << ' ' << f.qs.size() << "\n255\n";
    for (size_t i = f.qs.size(); i-- > 0;)
        for (size_t j = 0; j < f.ps.size(); ++j) {
            double v = (f.values(i, j) - lo) / span;
            os.put(static_cast<char>(std::lround(255.0 * std::clamp(v, 0.0, 1.0))));
        }
}

// ---------------------------------------------------------------------------
// JSON envelopes

inline nlohmann::json to_json(const TruncationConfig& cfg) {
    return {{"dim", cfg.dim}, {"tail_tol", cfg.tail_tol}, {"eig_tol", cfg.eig_tol}};
}

inline nlohmann::json to_json(const PhaseGrid& g) {
    return {{"q_min", g.q_min}, {"q_max", g.q_max}, {"p_min", g.p_min},
            {"p_max", g.p_max}, {"n_q", g.n_q},     {"n_p", g.n_p},
            {"rule", g.rule == PhaseGrid::Rule::MidpointUniform ? "midpoint-uniform"
                                                                : "gauss-legendre-tensor"}};
}

inline TruncationConfig truncation_from_json(const nlohmann::json& j) {
    return TruncationConfig(j.at("dim").get<int>(), j.value("tail_tol", 1e-9),
                            j.value("eig_tol", 1e-8));
}

inline PhaseGrid grid_from_json(const nlohmann::json& j) {
    auto rule = j.value("rule", std::string("gauss-legendre-tensor")) == "midpoint-uniform"
                    ? PhaseGrid::Rule::MidpointUniform
                    : PhaseGrid::Rule::GaussLegendreTensor;
    return PhaseGrid(j.value("q_min", -8.0), j.value("q_max", 8.0), j.value("p_min", -8.0),
                     j.value("p_max", 8.0), j.value("n_q", 257), j.value("n_p", 257), rule);
}

inline nlohmann::json to_json(const EffectReport& r) {
    return {{"min_eig", r.min_eig},
            {"max_eig", r.max_eig},
            {"proj_defect", r.proj_defect},
            {"hermiticity_defect", r.hermiticity_defect}};
}

// Sign and scaling conventions fixed at build time, validated by the marginal
// identities rather than taken from any text.
inline nlohmann::json convention_ledger() {
    return {{"hbar", 1.0},
            {"position", "Q = (a + a^dag)/sqrt(2)"},
            {"momentum", "P = i(a^dag - a)/sqrt(2)"},
            {"fourier", "F = diag((-i)^n), so P = F^dag Q F"},
            {"weyl", "W(q,p) = exp(i(p Q - q P)) = D((q + i p)/sqrt(2))"},
            {"weyl_position_shift", "W(q,p)^* Q W(q,p) = Q + q"},
            {"weyl_calibration", "c solved from quantize(1) = I (c ~ 1/pi)"},
            {"outer_bin_labels", "edge -+ 1"}};
}

inline nlohmann::json operator_envelope(const TruncationConfig& cfg, const PhaseGrid& grid,
                                        const std::string& map, const std::string& function,
                                        const EffectReport& report) {
    return {{"schema_version", kSchemaVersion},
            {"truncation", to_json(cfg)},
            {"grid", to_json(grid)},
            {"map", map},
            {"function", function},
            {"effect_report", to_json(report)},
            {"conventions", convention_ledger()}};
}

inline nlohmann::json to_json(const SampleReport& r) {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [label, cnt] : r.counts)
        counts.push_back({{"label", label}, {"count", cnt}});
    return {{"schema_version", kSchemaVersion},
            {"seed", r.seed},
            {"n", r.n},
            {"counts", counts},
            {"empirical_moments", r.empirical_moments},
            {"predicted_moments", r.predicted_moments},
            {"std_errors", r.std_errors}};
}

inline void write_counts_csv(std::ostream& os, const SampleReport& r) {
    os << "label,count\n" << std::setprecision(17);
    for (const auto& [label, cnt] : r.counts) os << label << ',' << cnt << '\n';
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << content;
}

}  // namespace pomq

#endif

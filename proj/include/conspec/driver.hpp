#pragma once

// Batch front end: run configuration (flags or INI-style config files),
// evaluation dispatch, aligned-table output, CSV emission, and the
// per-element constants ledger.  Numbers render with 17 significant digits so
// emitted CSVs round-trip bit-for-bit.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "conspec/contributions.hpp"
#include "conspec/scenario.hpp"

namespace conspec {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string scenario = "a2_model"; // model name, or a path to a config file
    std::vector<double> coeffs{1.0};
    double width = 1.0;
    double quad_T = -1.0; // <= 0: auto (10 / sqrt(width))
    int quad_N = 64;
    int quad_panels = 4;
    double fd_step = 1e-4; // first-order step; second-order stencils use 10x
    double tolerance = 1e-6;
    std::string out_dir = "out";
    bool emit_integrand = false;
    bool constants_only = false;

    std::vector<std::string> validate() const {
        std::vector<std::string> errors;
        if (!(width > 0.0)) errors.push_back("symbol.width: must be > 0 (got " + std::to_string(width) + ")");
        if (coeffs.empty()) errors.push_back("symbol.coeffs: at least one coefficient required");
        if (!(tolerance > 0.0)) errors.push_back("run.tolerance: must be > 0");
        if (quad_N < 1) errors.push_back("quadrature.N: must be >= 1");
        if (quad_panels < 1) errors.push_back("quadrature.panels: must be >= 1");
        if (!(fd_step > 0.0)) errors.push_back("derivatives.step: must be > 0");
        return errors;
    }
};

inline bool is_known_model(const std::string& name) {
    return name == "sl2z_model" || name == "a2_model" || name == "a1xa1_model" ||
           name == "b2_model" || name == "g2_model";
}

inline SystemKind system_for_model(const std::string& name) {
    if (name == "sl2z_model") return SystemKind::A1;
    if (name == "a2_model") return SystemKind::A2;
    if (name == "a1xa1_model") return SystemKind::A1xA1;
    if (name == "b2_model") return SystemKind::B2;
    if (name == "g2_model") return SystemKind::G2;
    throw ConfigError("scenario.name: unknown model '" + name + "'");
}

// ---------------------------------------------------------------------------
// Config files: flat INI (sections, key = value, # or ; comments).

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + v + "'");
    }
}

inline bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(where + ": not a boolean: '" + v + "'");
}

} // namespace detail

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = path + ":" + std::to_string(lineno);
        std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "symbol" && section != "quadrature" &&
                section != "derivatives" && section != "run")
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        std::string field = section + "." + key;

        if (field == "scenario.name") {
            cfg.scenario = value;
        } else if (field == "symbol.coeffs") {
            cfg.coeffs.clear();
            std::istringstream ss(value);
            std::string tok;
            while (ss >> tok) cfg.coeffs.push_back(detail::parse_number(tok, where + " (" + field + ")"));
            if (cfg.coeffs.empty()) throw ConfigError(where + ": symbol.coeffs is empty");
        } else if (field == "symbol.width") {
            cfg.width = detail::parse_number(value, where + " (" + field + ")");
        } else if (field == "quadrature.T") {
            cfg.quad_T = value == "auto" ? -1.0 : detail::parse_number(value, where + " (" + field + ")");
        } else if (field == "quadrature.N") {
            cfg.quad_N = static_cast<int>(detail::parse_number(value, where + " (" + field + ")"));
        } else if (field == "quadrature.panels") {
            cfg.quad_panels = static_cast<int>(detail::parse_number(value, where + " (" + field + ")"));
        } else if (field == "derivatives.step") {
            cfg.fd_step = detail::parse_number(value, where + " (" + field + ")");
        } else if (field == "run.tolerance") {
            cfg.tolerance = detail::parse_number(value, where + " (" + field + ")");
        } else if (field == "run.out") {
            cfg.out_dir = value;
        } else if (field == "run.emit_integrand") {
            cfg.emit_integrand = detail::parse_bool(value, where + " (" + field + ")");
        } else {
            throw ConfigError(where + ": unknown key '" + field + "'");
        }
    }
    return cfg;
}

inline Scenario scenario_from(const RunConfig& cfg) {
    RunConfig effective = cfg;
    if (!is_known_model(cfg.scenario)) {
        // A path: load it, then re-apply nothing (the file is the base; the
        // caller is expected to have merged flag overrides already).
        effective = parse_config_file(cfg.scenario);
        if (!is_known_model(effective.scenario))
            throw ConfigError(cfg.scenario + ": config file does not name a known model");
        effective.out_dir = cfg.out_dir;
        effective.constants_only = cfg.constants_only;
    }
    ScenarioParams p;
    p.poly = effective.coeffs;
    p.width = effective.width;
    p.quad_T = effective.quad_T;
    p.quad_nodes = effective.quad_N;
    p.quad_panels = effective.quad_panels;
    p.fd_step1 = effective.fd_step;
    p.fd_step2 = 10.0 * effective.fd_step;
    p.tolerance = effective.tolerance;
    return make_scenario(system_for_model(effective.scenario), p);
}

// ---------------------------------------------------------------------------
// Rendering.

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_terms_csv(std::ostream& os, const std::vector<ContributionTerm>& terms) {
    os << "class,weyl_word,rank_1_minus_w,case_tag,constant,value_re,value_im,err_estimate\n";
    for (const auto& t : terms)
        os << t.class_id << ',' << t.weyl_word << ',' << t.rank_one_minus_w << ','
           << to_string(t.tag) << ',' << fmt17(t.constant) << ',' << fmt17(t.value.real()) << ','
           << fmt17(t.value.imag()) << ',' << fmt17(t.error_estimate) << '\n';
}

inline std::vector<ContributionTerm> read_terms_csv(std::istream& is) {
    std::vector<ContributionTerm> terms;
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("terms csv: missing header");
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 8)
            throw ConfigError("terms csv line " + std::to_string(lineno) + ": expected 8 fields");
        ContributionTerm t;
        t.class_id = f[0];
        t.weyl_word = f[1];
        t.rank_one_minus_w = std::stoi(f[2]);
        t.tag = case_tag_from_string(f[3]);
        t.constant = std::strtod(f[4].c_str(), nullptr);
        t.value = cplx(std::strtod(f[5].c_str(), nullptr), std::strtod(f[6].c_str(), nullptr));
        t.error_estimate = std::strtod(f[7].c_str(), nullptr);
        terms.push_back(std::move(t));
    }
    return terms;
}

inline void write_totals_csv(std::ostream& os, const Report& rep) {
    os << "class,total_re,total_im\n";
    for (const auto& [name, total] : rep.class_totals)
        os << name << ',' << fmt17(total.real()) << ',' << fmt17(total.imag()) << '\n';
    os << "TOTAL," << fmt17(rep.grand_total.real()) << ',' << fmt17(rep.grand_total.imag())
       << '\n';
}

inline void print_term_table(std::ostream& os, const Report& rep) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-14s %-4s %-12s %13s %23s %23s %10s\n", "cls",
                  "weyl_word", "rk", "case", "constant", "value_re", "value_im", "err_est");
    os << buf;
    for (const auto& t : rep.terms) {
        std::snprintf(buf, sizeof buf, "%-4s %-14s %-4d %-12s %13.6g %23.15e %23.15e %10.2e\n",
                      t.class_id.c_str(), t.weyl_word.c_str(), t.rank_one_minus_w,
                      to_string(t.tag).c_str(), t.constant, t.value.real(), t.value.imag(),
                      t.error_estimate);
        os << buf;
    }
    for (const auto& [name, total] : rep.class_totals) {
        std::snprintf(buf, sizeof buf, "total %-10s %47.15e %23.15e\n", name.c_str(),
                      total.real(), total.imag());
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "total %-10s %47.15e %23.15e\n", "(grand)",
                  rep.grand_total.real(), rep.grand_total.imag());
    os << buf;
    for (const auto& fmsg : rep.failures) os << "FAILED " << fmsg << '\n';
}

// The constants ledger: every Weyl element of every class with the factors
// that preface its contribution.  Identity rows are marked: their summand is
// the derivative of a constant and vanishes.
inline void print_constants(std::ostream& os, const Scenario& sc) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%-4s %-14s %-4s %-12s %7s %6s %10s %10s %12s %8s %7s %13s  %s\n",
                  "cls", "weyl_word", "rk", "case", "star_C", "det", "angle", "cot",
                  "fourier_inv", "dirac", "extra", "prefactor", "note");
    os << buf;
    auto row = [&](const std::string& cls, const std::string& word, int rk, CaseTag tag,
                   double star_c, double det, const char* angle, const char* cot,
                   double fourier_inv, const char* dirac, const char* extra, double prefactor,
                   const char* note) {
        std::snprintf(buf, sizeof buf,
                      "%-4s %-14s %-4d %-12s %7g %6g %10s %10s %12.6g %8s %7s %13.6g  %s\n",
                      cls.c_str(), word.c_str(), rk, to_string(tag).c_str(), star_c, det, angle,
                      cot, fourier_inv, dirac, extra, prefactor, note);
        os << buf;
    };
    char angle_buf[32], cot_buf[32];

    auto rank1_rows = [&](const ParabolicClass& cl, CaseTag id_tag, CaseTag refl_tag,
                          const std::string& id_word) {
        int star_c = cl.datum->chamber_count;
        row(cl.name, id_word, 0, id_tag, star_c, 1.0, "-", "-", 1.0 / kTwoPi, "-", "-",
            r1_identity_constant(star_c), "identity summand = 0");
        const WeylElement& wr = detail::nontrivial_rank1_element(cl);
        row(cl.name, wr.word_str(), 1, refl_tag, star_c, wr.restricted_det_abs, "-", "-",
            1.0 / kTwoPi, "2pi", "-", r1_reflection_constant(star_c, wr.restricted_det_abs), "");
    };

    if (sc.rank() == 1) {
        rank1_rows(sc.minimal, CaseTag::R1_ID, CaseTag::R1_REFL, "*");
        return;
    }

    const ParabolicClass& cl = sc.minimal;
    int star_c = cl.datum->chamber_count;
    row(cl.name, "1", 0, CaseTag::MIN_R0, star_c, 1.0, "-", "-", 1.0 / (kTwoPi * kTwoPi), "-",
        "-", min_r0_constant(star_c), "identity summand = 0");
    const MinR1Constants bundle;
    for (const auto& w : cl.weyl) {
        if (classify(w) == 1) {
            ReflectionData rd = reflection_data(*cl.datum, w);
            if (!rd.perp1 && !rd.perp2) {
                double angle = case_constant_I(rd);
                std::snprintf(angle_buf, sizeof angle_buf, "%.6g", angle);
                row(cl.name, w.word_str(), 1, CaseTag::MIN_R1_I, rd.star_c_lambda,
                    w.restricted_det_abs, angle_buf, "-", bundle.fourier_inv, "2pi", "1/2",
                    bundle.product() * angle, "");
            } else {
                double cot = case_constant_II2(*cl.datum);
                std::snprintf(cot_buf, sizeof cot_buf, "%.6g", cot);
                row(cl.name, w.word_str(), 1, CaseTag::MIN_R1_II1, rd.star_c_lambda,
                    w.restricted_det_abs, "-", "-", bundle.fourier_inv, "2pi", "1/2",
                    bundle.product(), "hybrid derivative");
                row(cl.name, w.word_str(), 1, CaseTag::MIN_R1_II2, rd.star_c_lambda,
                    w.restricted_det_abs, "-", cot_buf, bundle.fourier_inv, "2pi", "1/2",
                    bundle.product() * cot, cot == 0.0 ? "vanishes" : "");
            }
        } else if (classify(w) == 2) {
            row(cl.name, w.word_str(), 2, CaseTag::MIN_R2, star_c, w.restricted_det_abs, "-",
                "-", 1.0 / (kTwoPi * kTwoPi), "(2pi)^2", "-",
                min_r2_constant(star_c, w.restricted_det_abs), "");
        }
    }
    for (const auto& mc : sc.maximal) {
        if (sc.associate) {
            row(mc.name, "1", 0, CaseTag::MAX_I, mc.datum->chamber_count, 1.0, "-", "-",
                1.0 / kTwoPi, "-", "-", r1_identity_constant(mc.datum->chamber_count),
                "cross-class c");
        } else {
            rank1_rows(mc, CaseTag::MAX_II_ID, CaseTag::MAX_II_REFL, "*");
        }
    }
}

// ---------------------------------------------------------------------------
// Integrand dumps.

namespace detail {

// Uniform sampling of the integrand behind an integral-type term; point
// terms have none.  The MIN_R0 dump is the y = (t, 0) slice of the plane
// integrand; MIN_R1 dumps sample the kernel-line integrand at Lambda' = 0.
inline bool dump_integrand(std::ostream& os, const Scenario& sc, const ContributionTerm& term,
                           int samples = 512) {
    const double T = sc.quad.half_width;
    auto emit = [&](auto&& f) {
        os << "t,integrand_re,integrand_im\n";
        for (int i = 0; i < samples; ++i) {
            double t = -T + 2.0 * T * i / (samples - 1);
            cplx v = f(t);
            os << fmt17(t) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
        }
        return true;
    };
    auto class_by_name = [&]() -> const ParabolicClass* {
        for (const auto* cl : sc.all_classes())
            if (cl->name == term.class_id) return cl;
        throw std::logic_error("dump_integrand: unknown class " + term.class_id);
    };
    const ParabolicClass& cl = *class_by_name();

    switch (term.tag) {
        case CaseTag::R1_ID:
        case CaseTag::MAX_II_ID: {
            Vec2 dir = unit(cl.datum->simple_roots[0]);
            return emit([&](double t) -> cplx {
                cplx acc = 0.0;
                for (const auto& w : cl.weyl)
                    acc += class_symbol_1d(cl, t) * c_star_dc(cl.cspec, w, t * dir, dir, sc.fd1);
                return acc;
            });
        }
        case CaseTag::MAX_I: {
            Vec2 dir = unit(cl.datum->simple_roots[0]);
            const WeylElement& cross = nontrivial_rank1_element(cl);
            return emit([&](double t) -> cplx {
                return class_symbol_1d(cl, t) * c_star_dc(cl.cspec, cross, t * dir, dir, sc.fd1);
            });
        }
        case CaseTag::MIN_R0: {
            ArthurPolynomial p = arthur_poly(*cl.datum);
            DirectionalOperator op = DirectionalOperator::second_order(p);
            return emit([&](double t) -> cplx {
                Vec2 y{t, 0.0};
                cplx acc = 0.0;
                for (const auto& w : cl.weyl) {
                    if (w.is_identity()) continue;
                    auto cw = [&](Vec2 yy) { return c_value(cl.cspec, w, yy); };
                    acc += std::conj(c_value(cl.cspec, w, y)) *
                           apply_second_order(op, cw, y, sc.fd2);
                }
                return class_symbol_2d(cl, y) * acc;
            });
        }
        case CaseTag::MIN_R1_I:
        case CaseTag::MIN_R1_II2: {
            const WeylElement* w = nullptr;
            for (const auto& e : cl.weyl)
                if (e.word_str() == term.weyl_word) w = &e;
            if (!w) throw std::logic_error("dump_integrand: unknown word " + term.weyl_word);
            ReflectionData rd = reflection_data(*cl.datum, *w);
            return emit([&](double u) -> cplx {
                Vec2 y = u * rd.kernel_dir;
                return class_symbol_2d(cl, y) * c_value(cl.cspec, *w, y);
            });
        }
        case CaseTag::MIN_R1_II1: {
            const WeylElement* w = nullptr;
            for (const auto& e : cl.weyl)
                if (e.word_str() == term.weyl_word) w = &e;
            if (!w) throw std::logic_error("dump_integrand: unknown word " + term.weyl_word);
            ReflectionData rd = reflection_data(*cl.datum, *w);
            int i = rd.perp1 ? 0 : 1;
            const WeylElement& wi = simple_reflection(cl, i);
            return emit([&](double u) -> cplx {
                Vec2 y = u * rd.kernel_dir;
                return class_symbol_2d(cl, y) *
                       hybrid_term(cl.cspec, wi, *w, y, rd.kernel_dir, sc.fd1);
            });
        }
        default:
            return false; // point term
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// The batch run.  Exit status: 0 success, 1 evaluation failure or a term
// error estimate above tolerance, 2 invalid configuration.

inline int run(const RunConfig& cfg, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    RunConfig effective = cfg;
    try {
        if (!is_known_model(cfg.scenario)) {
            effective = parse_config_file(cfg.scenario);
            effective.out_dir = cfg.out_dir;
            effective.constants_only = cfg.constants_only;
            effective.emit_integrand = cfg.emit_integrand || effective.emit_integrand;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }
    auto errors = effective.validate();
    if (!errors.empty()) {
        for (const auto& m : errors) err << "config error: " << m << '\n';
        return 2;
    }
    Scenario sc;
    try {
        sc = scenario_from(effective);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }

    if (effective.constants_only) {
        print_constants(out, sc);
        return 0;
    }

    Report rep = total_contribution(sc);
    print_term_table(out, rep);

    namespace fs = std::filesystem;
    fs::create_directories(effective.out_dir);
    {
        std::ofstream f(fs::path(effective.out_dir) / "terms.csv");
        write_terms_csv(f, rep.terms);
    }
    {
        std::ofstream f(fs::path(effective.out_dir) / "totals.csv");
        write_totals_csv(f, rep);
    }
    if (effective.emit_integrand) {
        for (std::size_t i = 0; i < rep.terms.size(); ++i) {
            std::ostringstream name;
            name << "integrand_" << (i + 1) << ".csv";
            std::ostringstream body;
            if (detail::dump_integrand(body, sc, rep.terms[i])) {
                std::ofstream f(fs::path(effective.out_dir) / name.str());
                f << body.str();
            }
        }
    }

    bool tolerance_ok = true;
    for (const auto& t : rep.terms)
        if (t.error_estimate > sc.tolerance) tolerance_ok = false;
    if (!rep.failures.empty()) {
        for (const auto& m : rep.failures) err << "term failed: " << m << '\n';
        return 1;
    }
    return tolerance_ok ? 0 : 1;
}

} // namespace conspec

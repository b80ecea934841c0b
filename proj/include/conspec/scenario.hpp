#pragma once

// A Scenario bundles everything one evaluation run needs: the minimal-class
// root datum with its Weyl group, the two maximal classes of a rank-2 layout
// (each carrying a one-dimensional root datum), the c-function model and
// spectral symbol per class and orbit label, and the quadrature/derivative
// policies.
//
// The maximal layout follows the system: the A2 layout is associate (the two
// classes exchange through a single cross element and only integral terms
// appear), all other rank-2 layouts are not associate (each class has a
// two-element Weyl group and contributes an integral and a point term).

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "conspec/c_function.hpp"
#include "conspec/arthur.hpp"
#include "conspec/root_system.hpp"
#include "conspec/spectral_symbol.hpp"
#include "conspec/weyl.hpp"

namespace conspec {

struct OrbitChannel {
    std::string label = "O1";
    SpectralSymbol symbol;
};

struct ParabolicClass {
    std::string name;
    std::shared_ptr<const RootSystem> datum;
    std::vector<WeylElement> weyl;
    CFunctionSpec cspec;
    std::vector<OrbitChannel> orbits;
};

struct QuadratureSpec {
    double half_width = 10.0; // T
    int nodes = 64;           // per panel
    int panels = 4;
};

struct Scenario {
    SystemKind kind = SystemKind::A1;
    bool associate = false;
    ParabolicClass minimal;                // datum rank 1 or 2
    std::vector<ParabolicClass> maximal;   // two classes when rank 2
    QuadratureSpec quad;
    FdPolicy fd1;   // first-order derivatives of c
    Fd2Policy fd2;  // second-order operator and D_lambda
    double tolerance = 1e-6;

    int rank() const { return minimal.datum->rank; }

    void validate() const {
        if (!minimal.datum) throw std::invalid_argument("Scenario: missing minimal datum");
        bool should_associate = kind == SystemKind::A2;
        if (rank() == 2 && associate != should_associate)
            throw std::invalid_argument("Scenario: associate flag inconsistent with system");
        if (rank() == 1 && !maximal.empty())
            throw std::invalid_argument("Scenario: rank-1 layout has no maximal classes");
        if (rank() == 2 && maximal.size() != 2)
            throw std::invalid_argument("Scenario: rank-2 layout needs two maximal classes");
        if (!(tolerance > 0.0)) throw std::invalid_argument("Scenario: tolerance must be > 0");
        for (const auto* cl : all_classes())
            for (const auto& ch : cl->orbits) ch.symbol.validate();
    }

    std::vector<const ParabolicClass*> all_classes() const {
        std::vector<const ParabolicClass*> out{&minimal};
        for (const auto& m : maximal) out.push_back(&m);
        return out;
    }
};

struct ScenarioParams {
    std::vector<double> poly{1.0};
    double width = 1.0;
    double quad_T = -1.0; // <= 0: auto, 10/sqrt(width)
    int quad_nodes = 64;
    int quad_panels = 4;
    double fd_step1 = 1e-4;
    double fd_step2 = 1e-3;
    double tolerance = 1e-6;
    cplx prefactor = 1.0;
    CFunctionSpec::FactorKind factor_kind = CFunctionSpec::FactorKind::completed_zeta_ratio;
    bool use_cache = true;
    PrecisionConfig precision{};
};

inline Scenario make_scenario(SystemKind kind, const ScenarioParams& p = {}) {
    if (!(p.width > 0.0)) throw std::invalid_argument("make_scenario: width must be > 0");
    Scenario sc;
    sc.kind = kind;
    sc.quad.half_width = p.quad_T > 0.0 ? p.quad_T : 10.0 / std::sqrt(p.width);
    sc.quad.nodes = p.quad_nodes;
    sc.quad.panels = p.quad_panels;
    sc.fd1.step = p.fd_step1;
    sc.fd2.step = p.fd_step2;
    sc.tolerance = p.tolerance;

    auto minimal_datum = std::make_shared<const RootSystem>(build_root_system(kind));

    // One interpolation table serves every class: the rank-one factor is the
    // same function throughout.  Range covers all coroot pairings reachable
    // from the truncated quadrature domain plus stencil offsets.
    std::shared_ptr<const CtildeCache> cache;
    if (p.use_cache && p.factor_kind == CFunctionSpec::FactorKind::completed_zeta_ratio) {
        double max_coroot = 0.0;
        for (Vec2 a : minimal_datum->positive_roots)
            max_coroot = std::max(max_coroot, norm(coroot(a)));
        max_coroot = std::max(max_coroot, 2.0); // the rank-1 maximal datum
        double range = sc.quad.half_width * std::sqrt(2.0) * max_coroot + 1.0;
        cache = std::make_shared<const CtildeCache>(range, p.precision);
    }

    auto make_class = [&](std::string name, std::shared_ptr<const RootSystem> datum) {
        ParabolicClass cl;
        cl.name = std::move(name);
        cl.datum = std::move(datum);
        cl.weyl = enumerate_weyl(*cl.datum);
        cl.cspec.system = cl.datum;
        cl.cspec.factor_kind = p.factor_kind;
        cl.cspec.per_class_prefactor = p.prefactor;
        cl.cspec.precision = p.precision;
        cl.cspec.cache = cache;
        OrbitChannel ch;
        ch.symbol.poly = p.poly;
        ch.symbol.width = p.width;
        cl.orbits.push_back(std::move(ch));
        return cl;
    };

    sc.minimal = make_class("C", minimal_datum);
    if (minimal_datum->rank == 2) {
        sc.associate = kind == SystemKind::A2;
        auto a1 = std::make_shared<const RootSystem>(build_root_system(SystemKind::A1));
        sc.maximal.push_back(make_class("C'", a1));
        sc.maximal.push_back(make_class("C''", a1));
    }
    sc.validate();
    return sc;
}

} // namespace conspec

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "admixid/conditions.hpp"
#include "admixid/cone.hpp"
#include "admixid/convex.hpp"
#include "admixid/counterexamples.hpp"
#include "admixid/equivalence.hpp"
#include "admixid/io.hpp"
#include "admixid/recovery.hpp"
#include "admixid/simulation.hpp"

namespace py = pybind11;
using namespace admixid;

namespace {

Tolerance make_tol(double eq_tol, double rank_tol) {
    Tolerance tol{eq_tol, rank_tol};
    tol.validate();
    return tol;
}

py::object optional_index(const std::optional<Index>& v) { return v ? py::cast(*v) : py::none(); }

py::list witness_list(const AnchorCheck& check) {
    py::list out;
    for (const auto& w : check.witnesses) out.append(optional_index(w));
    return out;
}

py::dict report_dict(const ConditionReport& r) {
    py::dict d;
    d["K"] = r.k;
    d["M"] = r.m;
    d["N"] = r.n;
    d["anchor_F"] = r.anchor_f.holds;
    d["anchor_F_rows"] = witness_list(r.anchor_f);
    d["anchor_Q"] = r.anchor_q.holds;
    d["anchor_Q_columns"] = witness_list(r.anchor_q);
    d["indep_F"] = r.indep_f;
    d["indep_Q"] = r.indep_q;
    d["distinct_columns_F"] = r.distinct_cols_f;
    d["unadmixed_Q"] = r.unadmixed_q;
    d["identifiable_anchorQ"] = r.identifiable_anchor_q;
    d["identifiable_anchorF"] = r.identifiable_anchor_f;
    d["identifiable_unadmixed"] = r.identifiable_unadmixed;
    return d;
}

py::dict counterexample_dict(const CounterexamplePair& c) {
    py::dict params;
    const auto& p = c.parameters;
    if (p.delta) params["delta"] = *p.delta;
    if (p.alpha) params["alpha"] = *p.alpha;
    if (p.direction) params["direction"] = *p.direction;
    if (p.population) params["population"] = *p.population;
    if (p.partner) params["partner"] = *p.partner;
    if (p.row) params["row"] = *p.row;
    if (p.column) params["column"] = *p.column;

    py::dict d;
    d["construction"] = std::string(command_name(c.construction));
    d["F1"] = c.original.f.matrix();
    d["Q1"] = c.original.q.matrix();
    d["F2"] = c.alternative.f.matrix();
    d["Q2"] = c.alternative.q.matrix();
    d["product_gap"] = c.product_gap;
    d["certificate"] = c.certificate;
    d["parameters"] = params;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Identifiability checks, exact recovery and counterexamples for Pi = F Q admixture factorizations";

    static py::handle error_type = py::exception<Error>(m, "Error").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(to_string(e.kind())), e.detail());
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    const auto eq = py::arg("eq_tol") = 1e-8;
    const auto rk = py::arg("rank_tol") = 1e-9;

    m.def(
        "classify",
        [](const Matrix& f, const Matrix& q, double e, double r) {
            const Tolerance tol = make_tol(e, r);
            return report_dict(classify(FrequencyMatrix(f, tol), AdmixtureMatrix(q, tol), tol));
        },
        py::arg("F"), py::arg("Q"), eq, rk, "Condition flags and witness indices for (F, Q).");

    m.def(
        "recover",
        [](const Matrix& pi, const std::string& regime, double e, double r) {
            const Tolerance tol = make_tol(e, r);
            const ExpectedFreqMatrix p(pi, tol);
            const RecoveredFactorization out = regime == "auto" ? recover_auto(p, tol) : recover(p, parse_regime(regime), tol);
            py::dict d;
            d["F"] = out.pair.f.matrix();
            d["Q"] = out.pair.q.matrix();
            d["K"] = out.k;
            d["residual"] = out.residual;
            d["regime"] = std::string(to_string(out.regime));
            d["warnings"] = out.warnings;
            return d;
        },
        py::arg("Pi"), py::arg("regime") = "auto", eq, rk,
        "Recover (F, Q) from Pi under anchorQ, anchorF, unadmixed or auto.");

    m.def(
        "counterexample",
        [](const std::string& name, std::optional<Matrix> f, std::optional<Matrix> q, std::optional<double> delta,
           std::optional<Index> k0, std::optional<Index> dim, double e, double r) {
            const Tolerance tol = make_tol(e, r);
            const Construction c = parse_construction(name);
            auto need = [&](const std::optional<Matrix>& x, const char* what) -> const Matrix& {
                if (!x) throw Error(ErrorKind::PreconditionViolated, std::string(what) + " is required");
                return *x;
            };
            auto fm = [&] { return FrequencyMatrix(need(f, "F"), tol); };
            auto qm = [&] { return AdmixtureMatrix(need(q, "Q"), tol); };
            switch (c) {
                case Construction::QInteriorColumn: return counterexample_dict(perturb_interior_q_column(fm(), qm(), tol));
                case Construction::RRotationQ: return counterexample_dict(rotate_r_q(fm(), qm(), delta, k0, tol));
                case Construction::FRowPerturbation: return counterexample_dict(perturb_f_row(fm(), qm(), tol));
                case Construction::RRotationF: return counterexample_dict(rotate_r_f(fm(), qm(), delta, k0, tol));
                case Construction::NecessityPQ: {
                    const FrequencyMatrix fr = fm();
                    return counterexample_dict(necessity_pq(fr, dim.value_or(fr.populations() + 1), tol));
                }
                case Construction::NecessityFRows: {
                    const AdmixtureMatrix qr = qm();
                    return counterexample_dict(necessity_f_rows(qr, dim.value_or(qr.populations() + 1), tol));
                }
                case Construction::UnadmixedDupColumn: {
                    const FrequencyMatrix fr = fm();
                    return counterexample_dict(unadmixed_dup_column(fr, dim.value_or(fr.populations() + 1), tol));
                }
                case Construction::UnadmixedMissingAnchor:
                    return counterexample_dict(unadmixed_missing_anchor(fm(), qm(), tol));
            }
            throw Error(ErrorKind::ParseError, "unknown construction");
        },
        py::arg("construction"), py::arg("F") = py::none(), py::arg("Q") = py::none(), py::arg("delta") = py::none(),
        py::arg("k0") = py::none(), py::arg("dim") = py::none(), eq, rk,
        "Two non-equivalent factor pairs with the same product. `dim` is N for necessity_pq and "
        "unadmixed_dup_column, M for necessity_F_rows.");

    m.def(
        "are_equivalent",
        [](const Matrix& f1, const Matrix& q1, const Matrix& f2, const Matrix& q2, double e, double r) {
            const Tolerance tol = make_tol(e, r);
            const EquivalenceVerdict v = are_equivalent(FactorPair(FrequencyMatrix(f1, tol), AdmixtureMatrix(q1, tol)),
                                                        FactorPair(FrequencyMatrix(f2, tol), AdmixtureMatrix(q2, tol)), tol);
            py::dict d;
            d["equivalent"] = v.equivalent();
            d["permutation"] = v.permutation ? py::cast(v.permutation->mapping) : py::none();
            d["reason"] = v.reason;
            d["max_distance"] = v.max_distance;
            return d;
        },
        py::arg("F1"), py::arg("Q1"), py::arg("F2"), py::arg("Q2"), eq, rk,
        "Whether one relabelling of populations maps (F2, Q2) onto (F1, Q1).");

    m.def(
        "simulate_genotypes",
        [](const Matrix& pi, Seed seed) -> Eigen::MatrixXi { return simulate_genotypes(pi, seed).data().cast<int>(); },
        py::arg("Pi"), py::arg("seed"), "Binomial(2, Pi) genotypes from two Bernoulli draws per entry.");

    m.def(
        "generate_instance",
        [](const std::string& cls, Index k, Index mm, Index n, Seed seed, double e, double r) {
            const Tolerance tol = make_tol(e, r);
            const FactorPair pair = generate_instance(parse_model_class(cls), k, mm, n, seed, tol);
            return py::make_tuple(pair.f.matrix(), pair.q.matrix());
        },
        py::arg("model_class"), py::arg("K"), py::arg("M"), py::arg("N"), py::arg("seed"), eq, rk,
        "Random (F, Q) in M' (anchorQ), M'' (anchorF) or M''' (unadmixed).");

    m.def(
        "convex_decompose",
        [](const Vector& v, const Matrix& g, double e, double r) -> std::optional<Vector> {
            auto w = convex_decompose(v, g, make_tol(e, r));
            if (!w) return std::nullopt;
            return w->weights;
        },
        py::arg("v"), py::arg("generators"), eq, rk, "Convex weights over the columns of `generators`, or None.");

    m.def(
        "has_unique_decompositions",
        [](const Matrix& g, double e, double r) { return has_unique_decompositions(g, make_tol(e, r)); },
        py::arg("generators"), eq, rk);

    m.def(
        "has_unique_conic_decompositions",
        [](const Matrix& g, double e, double r) { return has_unique_conic_decompositions(g, make_tol(e, r)); },
        py::arg("generators"), eq, rk);

    m.def(
        "minimal_generating_columns",
        [](const Matrix& p, double e, double r) { return minimal_generating_columns(p, make_tol(e, r)); },
        py::arg("points"), eq, rk);

    m.def(
        "minimal_conic_generating_rows",
        [](const Matrix& p, double e, double r) { return minimal_conic_generating_rows(p, make_tol(e, r)); },
        py::arg("rays"), eq, rk);

    m.def("read_matrix", [](const std::string& path) { return read_matrix(path); }, py::arg("path"));
    m.def(
        "write_matrix", [](const std::string& path, const Matrix& a) { write_matrix(path, a); }, py::arg("path"),
        py::arg("matrix"));
}

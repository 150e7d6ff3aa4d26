#include "admixid/report.hpp"

namespace admixid {

namespace {

Json witnesses(const AnchorCheck& check) {
    Json out = Json::array();
    for (const auto& w : check.witnesses) {
        if (w) {
            out.push_back(*w);
        } else {
            out.push_back(nullptr);
        }
    }
    return out;
}

Json vector_json(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Json pair_json(const FactorPair& pair) { return Json{{"F", to_json(pair.f.matrix())}, {"Q", to_json(pair.q.matrix())}}; }

}  // namespace

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const ConditionReport& r) {
    return Json{
        {"K", r.k},
        {"M", r.m},
        {"N", r.n},
        {"anchor_F", r.anchor_f.holds},
        {"anchor_F_rows", witnesses(r.anchor_f)},
        {"anchor_Q", r.anchor_q.holds},
        {"anchor_Q_columns", witnesses(r.anchor_q)},
        {"indep_F", r.indep_f},
        {"indep_Q", r.indep_q},
        {"distinct_columns_F", r.distinct_cols_f},
        {"unadmixed_Q", r.unadmixed_q},
        {"identifiable",
         {{"anchorQ", r.identifiable_anchor_q},
          {"anchorF", r.identifiable_anchor_f},
          {"unadmixed", r.identifiable_unadmixed}}},
    };
}

Json to_json(const EquivalenceVerdict& v) {
    Json out{{"equivalent", v.equivalent()}};
    if (v.permutation) {
        out["permutation"] = v.permutation->mapping;
        out["max_distance"] = v.max_distance;
    } else {
        out["permutation"] = nullptr;
        out["reason"] = v.reason;
    }
    return out;
}

Json to_json(const CounterexampleParameters& p) {
    Json out = Json::object();
    if (p.delta) out["delta"] = *p.delta;
    if (p.alpha) out["alpha"] = *p.alpha;
    if (p.direction) out["direction"] = vector_json(*p.direction);
    if (p.population) out["population"] = *p.population;
    if (p.partner) out["partner"] = *p.partner;
    if (p.row) out["row"] = *p.row;
    if (p.column) out["column"] = *p.column;
    return out;
}

Json to_json(const CounterexamplePair& c, bool with_matrices) {
    Json out{
        {"construction", std::string(command_name(c.construction))},
        {"product_gap", c.product_gap},
        {"equivalent", false},
        {"certificate", c.certificate},
        {"parameters", to_json(c.parameters)},
    };
    if (with_matrices) {
        out["original"] = pair_json(c.original);
        out["alternative"] = pair_json(c.alternative);
    }
    return out;
}

Json to_json(const RecoveredFactorization& r, bool with_matrices) {
    Json out{
        {"K", r.k},
        {"residual", r.residual},
        {"regime", std::string(to_string(r.regime))},
        {"warnings", r.warnings},
    };
    if (with_matrices) {
        out["F"] = to_json(r.pair.f.matrix());
        out["Q"] = to_json(r.pair.q.matrix());
    }
    return out;
}

}  // namespace admixid

#include "entwit/json_io.hpp"

#include <vector>

namespace entwit {

void to_json(Json& j, const Operator& op) {
    std::vector<double> re, im;
    for (const auto& z : op.entries()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j = Json{{"dim", op.dim()}, {"re", re}, {"im", im}};
}

Operator operator_from_json(const Json& j) {
    try {
        const int dim = j.at("dim").get<int>();
        const auto re = j.at("re").get<std::vector<double>>();
        const auto im = j.at("im").get<std::vector<double>>();
        if (re.size() != im.size()) throw ValidationError("operator JSON: re/im length mismatch");
        std::vector<Complex> entries;
        for (std::size_t k = 0; k < re.size(); ++k) entries.emplace_back(re[k], im[k]);
        return Operator(dim, entries);
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("operator JSON: ") + e.what());
    }
}

void to_json(Json& j, const CorrelationMatrix& m) {
    j = Json{{"basis_a", m.basis_a},
             {"basis_b", m.basis_b},
             {"p", {{m.p[0][0], m.p[0][1]}, {m.p[1][0], m.p[1][1]}}}};
}

void to_json(Json& j, const ChshResult& r) {
    j = Json{{"correlations", r.correlations},
             {"value", r.value},
             {"settings_rad", r.settings.radians()},
             {"verdict", to_string(r.verdict)}};
    if (r.std_error) {
        j["std_error"] = *r.std_error;
        j["margin"] = r.margin;
    }
}

void to_json(Json& j, const EprReidResult& r) {
    j = Json{{"dxm", r.dxm},
             {"dpp", r.dpp},
             {"product", r.product},
             {"bound", r.bound},
             {"verdict", to_string(r.verdict)}};
}

void to_json(Json& j, const CountTable& t) {
    j = Json{{"counts", {{t.counts[0][0], t.counts[0][1]}, {t.counts[1][0], t.counts[1][1]}}},
             {"n", t.n_total},
             {"theta_a", t.theta_a.theta()},
             {"theta_b", t.theta_b.theta()}};
}

SpdcConfig spdc_config_from_json(const Json& j) {
    try {
        SpdcConfig cfg;
        cfg.w = j.at("w").get<double>();
        cfg.L = j.at("L").get<double>();
        cfg.lambda = j.at("lambda").get<double>();
        if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
        if (j.contains("Lc") && !j.at("Lc").is_null()) cfg.Lc = j.at("Lc").get<double>();
        cfg.validate();
        return cfg;
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("SPDC config JSON: ") + e.what());
    }
}

}  // namespace entwit

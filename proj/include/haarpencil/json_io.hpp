#pragma once

#include <json.hpp>

#include <cstdio>
#include <string>

#include "haarpencil/content_ratio.hpp"
#include "haarpencil/haar_mc.hpp"
#include "haarpencil/matrix_tuple.hpp"
#include "haarpencil/moments.hpp"
#include "haarpencil/partition.hpp"
#include "haarpencil/symmetric_group.hpp"

namespace haarpencil {

using json = nlohmann::json;

// All emitted floats are rounded to 12 significant digits, so payloads
// re-parse to exactly the printed values.
inline double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline json partition_to_json(const Partition& p) { return json(p.parts()); }

inline Partition partition_from_json(const json& j) {
    return Partition(j.get<std::vector<int>>());
}

inline json permutation_to_json(const Permutation& p) { return json(p.one_based()); }

inline Permutation permutation_from_json(const json& j) {
    return Permutation::from_one_based(j.get<std::vector<int>>());
}

inline json complex_to_json(Cplx z) { return json::array({round12(z.real()), round12(z.imag())}); }

inline Cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json matrix_tuple_to_json(const MatrixTuple& x) {
    json mats = json::array();
    for (const auto& m : x.mats) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    return json{{"k", x.k()}, {"g", x.g()}, {"matrices", std::move(mats)}};
}

inline MatrixTuple matrix_tuple_from_json(const json& j) {
    const int k = j.at("k").get<int>();
    const int g = j.at("g").get<int>();
    const auto& mats = j.at("matrices");
    if (static_cast<int>(mats.size()) != g)
        throw std::invalid_argument("MatrixTuple JSON: 'matrices' length does not match g");
    std::vector<Eigen::MatrixXcd> ms;
    ms.reserve(static_cast<std::size_t>(g));
    for (const auto& mj : mats) {
        Eigen::MatrixXcd m(k, k);
        if (static_cast<int>(mj.size()) != k)
            throw std::invalid_argument("MatrixTuple JSON: matrix row count does not match k");
        for (int i = 0; i < k; ++i) {
            if (static_cast<int>(mj.at(i).size()) != k)
                throw std::invalid_argument("MatrixTuple JSON: matrix column count does not match k");
            for (int c = 0; c < k; ++c) m(i, c) = complex_from_json(mj.at(i).at(c));
        }
        ms.push_back(std::move(m));
    }
    return MatrixTuple(std::move(ms));
}

inline json moment_value_to_json(const MomentValue& mv) {
    json out;
    out["float"] = round12(mv.value.real());
    if (mv.value.imag() != 0.0) out["float_imag"] = round12(mv.value.imag());
    out["exact"] = mv.exact ? json(rat_complex_to_string(*mv.exact)) : json(nullptr);
    out["trunc_bound"] = mv.truncation_error_bound ? json(round12(*mv.truncation_error_bound))
                                                   : json(nullptr);
    out["d"] = mv.d;
    out["k"] = mv.k;
    out["g"] = mv.g;
    return out;
}

inline json moment_estimate_to_json(const MomentEstimate& est) {
    return json{{"mean", complex_to_json(est.mean)},
                {"stderr", round12(est.stderr_)},
                {"samples", est.samples},
                {"seed", est.seed},
                {"d", est.d},
                {"g", est.g}};
}

inline json ratio_report_to_json(const RatioReport& rep) {
    return json{{"lambda", partition_to_json(rep.lambda)},
                {"mu", partition_to_json(rep.mu)},
                {"nu", partition_to_json(rep.nu)},
                {"d", rep.d},
                {"ratio", rat_to_string(rep.ratio)},
                {"bound", rep.bound.get_str()},
                {"ok", rep.satisfies},
                {"special_form", rep.is_special_form}};
}

}  // namespace haarpencil

#include "mbred/json_io.hpp"

namespace mbred {

namespace {

Json complex_to_json(const Complex& z) {
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ValidationError("expected a [re, im] pair");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError("expected a nonempty array of matrix rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[r].size()) != cols) {
            throw ValidationError("ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(j[r][c]);
        }
    }
    return m;
}

Json ket_to_json(const Ket& k) {
    Json arr = Json::array();
    for (int i = 0; i < k.dim(); ++i) {
        arr.push_back(complex_to_json(k.amplitudes()(i)));
    }
    return arr;
}

Ket ket_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError("expected a nonempty amplitude array");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
    }
    return Ket(std::move(v));
}

Json pure_point_to_json(const PurePoint& p) {
    return Json{{"ket", ket_to_json(p.representative())}, {"phase_gauge", "arbitrary"}};
}

PurePoint pure_point_from_json(const Json& j) {
    return pure_from_ket(ket_from_json(j.at("ket")));
}

Json measure_to_json(const PureMeasure& mu) {
    Json arr = Json::array();
    for (const auto& e : mu.support()) {
        arr.push_back(Json{{"point", pure_point_to_json(e.point)}, {"weight", e.weight}});
    }
    return arr;
}

PureMeasure pure_measure_from_json(const Json& j) {
    std::vector<PureMeasure::Entry> entries;
    for (const Json& item : j) {
        entries.push_back(
            {pure_point_from_json(item.at("point")), item.at("weight").get<double>()});
    }
    return PureMeasure(std::move(entries));
}

Json measure_to_json(const LabelMeasure& mu) {
    Json arr = Json::array();
    for (const auto& e : mu.support()) {
        arr.push_back(Json{{"point", e.point}, {"weight", e.weight}});
    }
    return arr;
}

LabelMeasure label_measure_from_json(const Json& j) {
    std::vector<LabelMeasure::Entry> entries;
    for (const Json& item : j) {
        entries.push_back(
            {item.at("point").get<std::string>(), item.at("weight").get<double>()});
    }
    return LabelMeasure(std::move(entries));
}

Json povm_to_json(const Povm& f) {
    Json arr = Json::array();
    for (const Effect& e : f.outcomes()) {
        arr.push_back(matrix_to_json(e.matrix()));
    }
    return arr;
}

Povm povm_from_json(const Json& j) {
    std::vector<Effect> effects;
    for (const Json& item : j) {
        effects.emplace_back(HermitianOperator(matrix_from_json(item)));
    }
    return Povm(std::move(effects));
}

Json extension_to_json(const ClassicalExtension& ext) {
    Json states = Json::array();
    for (const DensityOperator& w : ext.assigned_states()) {
        states.push_back(matrix_to_json(w.matrix()));
    }
    return Json{{"points", ext.sample_points()},
                {"states", std::move(states)},
                {"target_dim", ext.target_dim()},
                {"adaptation_note", ext.adaptation_note()}};
}

ClassicalExtension extension_from_json(const Json& j) {
    std::vector<std::string> labels = j.at("points").get<std::vector<std::string>>();
    std::vector<DensityOperator> states;
    for (const Json& item : j.at("states")) {
        states.emplace_back(HermitianOperator(matrix_from_json(item)));
    }
    return ClassicalExtension(std::move(labels), std::move(states),
                              j.at("target_dim").get<int>(),
                              j.value("adaptation_note", std::string{}));
}

}  // namespace mbred

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "mbred/extensions.hpp"
#include "mbred/fuzzy.hpp"
#include "mbred/harness.hpp"
#include "mbred/json_io.hpp"
#include "mbred/mbmap.hpp"

namespace py = pybind11;
using namespace mbred;

namespace {

PureMeasure pure_measure_from_pairs(const std::vector<std::pair<PurePoint, double>>& pairs) {
    std::vector<PureMeasure::Entry> entries;
    entries.reserve(pairs.size());
    for (const auto& [point, weight] : pairs) entries.push_back({point, weight});
    return PureMeasure(std::move(entries));
}

LabelMeasure label_measure_from_pairs(const std::vector<std::pair<std::string, double>>& pairs) {
    std::vector<LabelMeasure::Entry> entries;
    entries.reserve(pairs.size());
    for (const auto& [label, weight] : pairs) entries.push_back({label, weight});
    return LabelMeasure(std::move(entries));
}

}  // namespace

PYBIND11_MODULE(_mbred, m) {
    m.doc() = "finite-dimensional classical extension of quantum probability";
    m.attr("__version__") = kVersion;

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::class_<PurePoint>(m, "PurePoint")
        .def(py::init([](const Vector& amplitudes) { return pure_from_ket(Ket(amplitudes)); }),
             py::arg("ket"))
        .def_property_readonly("dim", &PurePoint::dim)
        .def("ket", [](const PurePoint& p) { return p.representative().amplitudes(); })
        .def("projector", [](const PurePoint& p) { return p.projector(); })
        .def("approx_equal", &PurePoint::approx_equal);

    py::class_<DensityOperator>(m, "DensityOperator")
        .def(py::init<const Matrix&>(), py::arg("matrix"))
        .def_property_readonly("dim", &DensityOperator::dim)
        .def("matrix", [](const DensityOperator& w) { return w.matrix(); });

    py::class_<Effect>(m, "Effect")
        .def(py::init<const Matrix&>(), py::arg("matrix"))
        .def_property_readonly("dim", &Effect::dim)
        .def("matrix", [](const Effect& e) { return e.matrix(); })
        .def_static("identity", &Effect::identity)
        .def_static("zero", &Effect::zero);

    py::class_<PureMeasure>(m, "PureMeasure")
        .def(py::init(&pure_measure_from_pairs), py::arg("support"))
        .def_property_readonly("points",
                               [](const PureMeasure& mu) {
                                   std::vector<PurePoint> pts;
                                   for (const auto& e : mu.support()) pts.push_back(e.point);
                                   return pts;
                               })
        .def_property_readonly("weights",
                               [](const PureMeasure& mu) {
                                   std::vector<double> ws;
                                   for (const auto& e : mu.support()) ws.push_back(e.weight);
                                   return ws;
                               })
        .def("weight_at", &PureMeasure::weight_at)
        .def("__len__", &PureMeasure::size);

    py::class_<LabelMeasure>(m, "LabelMeasure")
        .def(py::init(&label_measure_from_pairs), py::arg("support"))
        .def_property_readonly("points",
                               [](const LabelMeasure& mu) {
                                   std::vector<std::string> pts;
                                   for (const auto& e : mu.support()) pts.push_back(e.point);
                                   return pts;
                               })
        .def_property_readonly("weights",
                               [](const LabelMeasure& mu) {
                                   std::vector<double> ws;
                                   for (const auto& e : mu.support()) ws.push_back(e.weight);
                                   return ws;
                               })
        .def("weight_at", &LabelMeasure::weight_at)
        .def("__len__", &LabelMeasure::size);

    py::class_<ClassicalEffect>(m, "ClassicalEffect")
        .def("__call__", &ClassicalEffect::operator());

    py::class_<Povm>(m, "Povm")
        .def(py::init([](const std::vector<Matrix>& outcomes) {
                 std::vector<Effect> effects;
                 effects.reserve(outcomes.size());
                 for (const Matrix& o : outcomes) effects.emplace_back(o);
                 return Povm(std::move(effects));
             }),
             py::arg("outcomes"))
        .def_property_readonly("dim", &Povm::dim)
        .def_property_readonly("outcome_count", &Povm::outcome_count)
        .def("outcomes", [](const Povm& f) {
            std::vector<Matrix> out;
            for (const Effect& e : f.outcomes()) out.push_back(e.matrix());
            return out;
        });

    py::class_<MarkovKernel>(m, "MarkovKernel")
        .def("__call__", &MarkovKernel::operator())
        .def("row", &MarkovKernel::row)
        .def_property_readonly("outcome_count", &MarkovKernel::outcome_count);

    py::class_<ClassicalExtension>(m, "ClassicalExtension")
        .def_property_readonly("sample_points", &ClassicalExtension::sample_points)
        .def_property_readonly("target_dim", &ClassicalExtension::target_dim)
        .def_property_readonly("adaptation_note", &ClassicalExtension::adaptation_note)
        .def("state_of", &ClassicalExtension::state_of);

    // projective geometry
    m.def("pure_from_ket", [](const Vector& v) { return pure_from_ket(Ket(v)); }, py::arg("ket"));
    m.def("transition_probability", &transition_probability);
    m.def("dist_opnorm", &dist_opnorm);
    m.def("dist_trace", &dist_trace);
    m.def("sample_haar_pure", &sample_haar_pure, py::arg("dim"), py::arg("count"),
          py::arg("seed"));
    m.def("in_weak_neighborhood", &in_weak_neighborhood, py::arg("candidate"), py::arg("center"),
          py::arg("probes"), py::arg("epsilon"));

    // measures
    m.def("dirac", [](const PurePoint& p) { return dirac(p); });
    m.def("dirac_label", [](const std::string& s) { return dirac(s); });
    m.def("mix", [](double a, const PureMeasure& mu, const PureMeasure& nu) {
        return mix(a, mu, nu);
    });
    m.def("mix", [](double a, const LabelMeasure& mu, const LabelMeasure& nu) {
        return mix(a, mu, nu);
    });
    m.def("tv_distance",
          [](const PureMeasure& mu, const PureMeasure& nu) { return tv_distance(mu, nu); });
    m.def("tv_distance",
          [](const LabelMeasure& mu, const LabelMeasure& nu) { return tv_distance(mu, nu); });
    m.def("expectation", [](const PureMeasure& mu, const ClassicalEffect& f) {
        return expectation(mu, f);
    });

    // reduction map and ensembles
    m.def("reduce", &reduce, py::arg("measure"));
    m.def("adjoint_effect", &adjoint_effect);
    m.def("eigen_ensemble", &eigen_ensemble);
    m.def("alternative_ensemble", &alternative_ensemble, py::arg("state"), py::arg("mixer"));
    m.def("support_concentration", &support_concentration);
    m.def("purity", &purity);
    m.def("as_pure_point", &as_pure_point);

    // measurements
    m.def("kernel_from_povm", &kernel_from_povm);
    m.def("quantum_distribution", &quantum_distribution);
    m.def("classical_distribution", &classical_distribution);
    m.def("simulate_outcomes", &simulate_outcomes, py::arg("kernel"), py::arg("measure"),
          py::arg("count"), py::arg("seed"));
    m.def("sharp_effect_residual", &sharp_effect_residual, py::arg("points"), py::arg("labels"));
    m.def("pvm_from_basis", [](const std::vector<Vector>& basis) {
        std::vector<Ket> kets;
        kets.reserve(basis.size());
        for (const Vector& v : basis) kets.emplace_back(v);
        return pvm_from_basis(kets);
    });

    // classical extensions
    m.def("example1", &example1, py::arg("unitary"), py::arg("probes"));
    m.def("example2", &example2, py::arg("unitary"), py::arg("probes"));
    m.def("example3", &example3, py::arg("source_dim"), py::arg("probes"));
    m.def("reduce_extension", &reduce_extension);
    m.def("extract_omega_tilde", &extract_omega_tilde);
    m.def("index_map", &index_map);
    m.def("verify_representation", [](const ClassicalExtension& ext, const LabelMeasure& mu) {
        const RepresentationCheck check = verify_representation(ext, mu);
        return py::make_tuple(check.trace_distance, check.pass);
    });

    // sampling
    m.def("random_haar_unitary", &random_haar_unitary, py::arg("dim"), py::arg("seed"));
    m.def("random_density", &random_density, py::arg("dim"), py::arg("seed"));
    m.def("random_effect", &random_effect, py::arg("dim"), py::arg("seed"));
    m.def("random_povm", &random_povm, py::arg("dim"), py::arg("outcomes"), py::arg("seed"));
    m.def("random_isometry", &random_isometry, py::arg("rows"), py::arg("cols"), py::arg("seed"));
    m.def("random_pure_measure", &random_pure_measure, py::arg("dim"), py::arg("support_size"),
          py::arg("seed"));
    m.def("mix_seed", [](std::uint64_t seed, std::uint64_t index) { return mix_seed(seed, index); });

    // experiment runner: returns the JSON report as a string
    m.def(
        "run_experiment_json",
        [](const std::string& experiment, const std::vector<int>& dims, std::int64_t samples,
           std::uint64_t seed, const std::map<std::string, double>& tolerances, int example) {
            ExperimentConfig config;
            config.experiment = experiment;
            config.dims = dims;
            config.samples = samples;
            config.seed = seed;
            config.tolerance_overrides = tolerances;
            config.example = example;
            return run(config).to_json().dump();
        },
        py::arg("experiment"), py::arg("dims") = std::vector<int>{},
        py::arg("samples") = static_cast<std::int64_t>(-1),
        py::arg("seed") = static_cast<std::uint64_t>(1),
        py::arg("tolerances") = std::map<std::string, double>{}, py::arg("example") = 1);
}

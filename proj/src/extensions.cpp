#include "mbred/extensions.hpp"

#include <utility>

namespace mbred {

namespace {

void check_unitary(const Matrix& u) {
    if (u.rows() != u.cols() || u.rows() < 1) {
        throw ValidationError("expected a square unitary matrix");
    }
    const Matrix gram = u.adjoint() * u;
    const double defect =
        (gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (defect > tolerances().recon_tol) {
        throw ValidationError("matrix is not unitary: max |U*U - I| = " + std::to_string(defect));
    }
}

}  // namespace

std::string probe_label(std::size_t index) {
    return "P" + std::to_string(index);
}

ClassicalExtension::ClassicalExtension(std::vector<std::string> sample_points,
                                       std::vector<DensityOperator> assigned_states,
                                       int target_dim, std::string adaptation_note)
    : sample_points_(std::move(sample_points)),
      assigned_states_(std::move(assigned_states)),
      target_dim_(target_dim),
      adaptation_note_(std::move(adaptation_note)) {
    if (sample_points_.empty() || sample_points_.size() != assigned_states_.size()) {
        throw ValidationError("ClassicalExtension: need one assigned state per sample point");
    }
    if (target_dim_ < 1) {
        throw ValidationError("ClassicalExtension: target_dim must be >= 1");
    }
    for (std::size_t i = 0; i < sample_points_.size(); ++i) {
        if (assigned_states_[i].dim() != target_dim_) {
            throw ValidationError("ClassicalExtension: assigned state dimension mismatch at '" +
                                  sample_points_[i] + "'");
        }
        if (!index_.emplace(sample_points_[i], i).second) {
            throw ValidationError("ClassicalExtension: duplicate sample point '" +
                                  sample_points_[i] + "'");
        }
    }
}

bool ClassicalExtension::has_point(const std::string& label) const {
    return index_.count(label) > 0;
}

const DensityOperator& ClassicalExtension::state_of(const std::string& label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) {
        throw ValidationError("ClassicalExtension: unknown sample point '" + label + "'");
    }
    return assigned_states_[it->second];
}

DensityOperator reduce_extension(const ClassicalExtension& ext, const LabelMeasure& mu) {
    Matrix acc = Matrix::Zero(ext.target_dim(), ext.target_dim());
    for (const auto& e : mu.support()) {
        acc += e.weight * ext.state_of(e.point).matrix();
    }
    return DensityOperator(HermitianOperator(acc));
}

std::vector<std::string> extract_omega_tilde(const ClassicalExtension& ext) {
    const double threshold = 1.0 - tolerances().purity_tol;
    std::vector<std::string> pure_sector;
    for (std::size_t i = 0; i < ext.sample_points().size(); ++i) {
        if (purity(ext.assigned_states()[i]) >= threshold) {
            pure_sector.push_back(ext.sample_points()[i]);
        }
    }
    return pure_sector;
}

std::unordered_map<std::string, PurePoint> index_map(const ClassicalExtension& ext) {
    std::unordered_map<std::string, PurePoint> map;
    for (const std::string& omega : extract_omega_tilde(ext)) {
        map.emplace(omega, as_pure_point(ext.state_of(omega)));
    }
    return map;
}

RepresentationCheck verify_representation(const ClassicalExtension& ext, const LabelMeasure& mu) {
    const auto i_map = index_map(ext);
    for (const auto& e : mu.support()) {
        if (i_map.find(e.point) == i_map.end()) {
            throw ValidationError("verify_representation: support point '" + e.point +
                                  "' lies outside the pure sector");
        }
    }
    const DensityOperator direct = reduce_extension(ext, mu);
    const PureMeasure image =
        pushforward(mu, [&i_map](const std::string& omega) { return i_map.at(omega); });
    const DensityOperator via_barycenter = reduce(image);
    const double delta =
        trace_norm(HermitianOperator(direct.matrix() - via_barycenter.matrix()));
    return RepresentationCheck{delta, delta <= tolerances().recon_tol};
}

ClassicalExtension example1(const Matrix& u, const std::vector<PurePoint>& probes) {
    check_unitary(u);
    if (probes.empty()) {
        throw ValidationError("example1 requires a nonempty probe set");
    }
    const int dim = static_cast<int>(u.rows());
    std::vector<std::string> labels;
    std::vector<DensityOperator> states;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (probes[k].dim() != dim) {
            throw ValidationError("example1: probe dimension mismatch");
        }
        labels.push_back(probe_label(k));
        states.emplace_back(HermitianOperator(u * probes[k].projector() * u.adjoint()));
    }
    return ClassicalExtension(std::move(labels), std::move(states), dim,
                              "similarity extension on a finite probe set; the full projective "
                              "space is replaced by the declared probes");
}

ClassicalExtension example2(const Matrix& u, const std::vector<PurePoint>& probes) {
    check_unitary(u);
    if (probes.empty()) {
        throw ValidationError("example2 requires a nonempty probe set");
    }
    const int dim = static_cast<int>(u.rows());
    std::vector<std::string> labels;
    std::vector<DensityOperator> states;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (probes[k].dim() != dim) {
            throw ValidationError("example2: probe dimension mismatch");
        }
        labels.push_back("copy1:" + probe_label(k));
        states.emplace_back(HermitianOperator(probes[k].projector()));
    }
    for (std::size_t k = 0; k < probes.size(); ++k) {
        labels.push_back("copy2:" + probe_label(k));
        states.emplace_back(HermitianOperator(u * probes[k].projector() * u.adjoint()));
    }
    return ClassicalExtension(std::move(labels), std::move(states), dim,
                              "two disjoint labeled copies of the probe set replace the proper "
                              "subspace construction, keeping the point map partially two-to-one");
}

ClassicalExtension example3(int source_dim, const std::vector<PurePoint>& probes) {
    if (source_dim < 2 || source_dim % 2 != 0) {
        throw ValidationError("example3 requires an even source dimension >= 2");
    }
    if (probes.empty()) {
        throw ValidationError("example3 requires a nonempty probe set");
    }
    const int m = source_dim / 2;
    // V1 maps span(e_0..e_{m-1}) onto the target, V2 maps the complement.
    Matrix v1 = Matrix::Zero(m, source_dim);
    Matrix v2 = Matrix::Zero(m, source_dim);
    for (int k = 0; k < m; ++k) {
        v1(k, k) = Complex(1.0, 0.0);
        v2(k, m + k) = Complex(1.0, 0.0);
    }
    std::vector<std::string> labels;
    std::vector<DensityOperator> states;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (probes[k].dim() != source_dim) {
            throw ValidationError("example3: probe dimension mismatch");
        }
        labels.push_back(probe_label(k));
        const Matrix& p = probes[k].projector();
        states.emplace_back(HermitianOperator(v1 * p * v1.adjoint() + v2 * p * v2.adjoint()));
    }
    return ClassicalExtension(std::move(labels), std::move(states), m,
                              "half-dimension target adaptation: the two infinite-dimensional "
                              "partial isometries become coordinate maps onto a dim "
                              + std::to_string(m) + " target");
}

}  // namespace mbred

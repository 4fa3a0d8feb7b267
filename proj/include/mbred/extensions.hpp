#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mbred/linalg.hpp"
#include "mbred/mbmap.hpp"
#include "mbred/measures.hpp"
#include "mbred/projective.hpp"

namespace mbred {

using LabelMeasure = DiscreteMeasure<std::string>;

/// A classical extension over a finite sample space: labeled points omega and
/// the states assigned to their Dirac measures. The probe set stands in for
/// the full projective space, which no finite structure can cover exactly.
class ClassicalExtension {
public:
    ClassicalExtension(std::vector<std::string> sample_points,
                       std::vector<DensityOperator> assigned_states, int target_dim,
                       std::string adaptation_note);

    const std::vector<std::string>& sample_points() const { return sample_points_; }
    const std::vector<DensityOperator>& assigned_states() const { return assigned_states_; }
    int target_dim() const { return target_dim_; }
    const std::string& adaptation_note() const { return adaptation_note_; }

    bool has_point(const std::string& label) const;
    // State assigned to the Dirac measure at `label`; throws on unknown labels.
    const DensityOperator& state_of(const std::string& label) const;

private:
    std::vector<std::string> sample_points_;
    std::vector<DensityOperator> assigned_states_;
    std::unordered_map<std::string, std::size_t> index_;
    int target_dim_;
    std::string adaptation_note_;
};

// sum_omega mu(omega) * (state assigned to omega): the reduction of mu.
DensityOperator reduce_extension(const ClassicalExtension& ext, const LabelMeasure& mu);

// The sample points whose assigned states are pure (purity >= 1 - purity_tol).
std::vector<std::string> extract_omega_tilde(const ClassicalExtension& ext);

// omega -> the pure point of its assigned state, defined exactly on the
// output of extract_omega_tilde.
std::unordered_map<std::string, PurePoint> index_map(const ClassicalExtension& ext);

struct RepresentationCheck {
    double trace_distance;
    bool pass;
};

// Compares the extension's own reduction of mu against the barycenter of the
// image measure mu . i^{-1}; the two must agree for measures carried by the
// pure sector.
RepresentationCheck verify_representation(const ClassicalExtension& ext, const LabelMeasure& mu);

// Similarity extension: omega ranges over the probe points, each assigned
// U P U*. All assigned states are pure.
ClassicalExtension example1(const Matrix& u, const std::vector<PurePoint>& probes);

// Two disjoint labeled copies of the probe set; copy 1 assigns P itself,
// copy 2 assigns U P U*. The point map is partially two-to-one.
ClassicalExtension example2(const Matrix& u, const std::vector<PurePoint>& probes);

// Source space of even dimension 2m split as K + K-perp, mapped to a target
// of dimension m by two partial isometries; assigned states
// V1 P V1* + V2 P V2* are generally mixed.
ClassicalExtension example3(int source_dim, const std::vector<PurePoint>& probes);

// Probe-point labels used by the example constructors ("P0", "P1", ...;
// example2 prefixes "copy1:" / "copy2:").
std::string probe_label(std::size_t index);

}  // namespace mbred

#include "mbred/tolerances.hpp"

#include <array>
#include <utility>

#include "mbred/errors.hpp"

namespace mbred {

namespace {

using Field = std::pair<const char*, double Tolerances::*>;

constexpr std::array<Field, 9> kFields = {{
    {"unit_tol", &Tolerances::unit_tol},
    {"herm_tol", &Tolerances::herm_tol},
    {"psd_tol", &Tolerances::psd_tol},
    {"trace_tol", &Tolerances::trace_tol},
    {"recon_tol", &Tolerances::recon_tol},
    {"point_eq_tol", &Tolerances::point_eq_tol},
    {"weight_tol", &Tolerances::weight_tol},
    {"weight_floor", &Tolerances::weight_floor},
    {"purity_tol", &Tolerances::purity_tol},
}};

}  // namespace

void Tolerances::set(const std::string& name, double value) {
    if (value < 0.0) {
        throw ValidationError("tolerance '" + name + "' must be nonnegative");
    }
    for (const auto& [field_name, member] : kFields) {
        if (name == field_name) {
            this->*member = value;
            return;
        }
    }
    throw ValidationError("unknown tolerance name '" + name + "'");
}

double Tolerances::get(const std::string& name) const {
    for (const auto& [field_name, member] : kFields) {
        if (name == field_name) return this->*member;
    }
    throw ValidationError("unknown tolerance name '" + name + "'");
}

Tolerances& tolerances() {
    static Tolerances instance;
    return instance;
}

}  // namespace mbred

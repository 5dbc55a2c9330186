#pragma once

#include <optional>
#include <string>

#include "qtherm/model.hpp"

namespace qtherm {

/// Dissipative part of the generator,
///   D[rho] = sum_{a,omega} gamma_a(omega) [L rho L† - (1/2){L†L, rho}],
/// restricted to one bath when `bath` is given. Hermitian and traceless for
/// Hermitian input.
Mat apply_dissipator(const LindbladModel& model, const Mat& rho,
                     const std::optional<std::string>& bath = std::nullopt);

/// Full generator -(i/hbar)[H, rho] + D[rho].
Mat apply_generator(const LindbladModel& model, const Mat& rho);

}  // namespace qtherm

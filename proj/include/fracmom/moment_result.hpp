#pragma once

#include <optional>

namespace fracmom {

enum class MomentMethod {
    thm1prime_eq9,
    thm1prime_eq10,
    thm2,
    thm5_eq19,
    thm5_eq20,
    eq28,
    ramanujan,
    eq5,
    oracle,
};

const char* method_name(MomentMethod m);
const char* method_formula_ref(MomentMethod m);

struct MomentResult {
    double s = 0.0;
    /// Meaningless when `infinite` is set.
    double value = 0.0;
    bool infinite = false;
    MomentMethod method = MomentMethod::oracle;
    double error_estimate = 0.0;
    int panels_used = 0;
    long function_evals = 0;
    /// Value (and its estimate) of an independent second route, when the
    /// operation computed one.
    std::optional<double> cross_value;
    std::optional<double> cross_error;
};

} // namespace fracmom

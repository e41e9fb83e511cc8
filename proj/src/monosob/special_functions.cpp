#include "monosob/special_functions.hpp"

#include "monosob/errors.hpp"
#include "monosob/json_writer.hpp"

#include <array>
#include <cmath>

namespace monosob {
namespace {

// Lanczos approximation with N = 13, rational form scaled by exp(g)
// (coefficients as published with Boost.Math, lanczos13m53).
constexpr double lanczos_g = 6.024680040776729583740234375;

constexpr std::array<double, 13> expg_scaled_num = {
    56906521.91347156388090791033559122686859,
    103794043.1163445451906271053616070238554,
    86363131.28813859145546927288977868422342,
    43338889.32467613834773723740590533316085,
    14605578.08768506808414169982791359218571,
    3481712.15498064590882071018964774556468,
    601859.6171681098786670226533699352302507,
    75999.29304014542649875303443598909137092,
    6955.999602515376140356310115515198987526,
    449.9445569063168119446858607650988409623,
    19.51992788247617482847860966235652136208,
    0.5098416655656676188125178644804694509993,
    0.006061842346248906525783753964555936883222,
};

// Coefficients of z(z+1)...(z+11) in ascending powers.
constexpr std::array<double, 13> denom = {
    0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0, 13339535.0,
    2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
};

double evaluate_rational(double z) {
    double num = 0.0;
    double den = 0.0;
    if (z <= 1.0) {
        for (std::size_t i = expg_scaled_num.size(); i-- > 0;) {
            num = num * z + expg_scaled_num[i];
            den = den * z + denom[i];
        }
    } else {
        // Horner in 1/z keeps the powers bounded for large z.
        const double y = 1.0 / z;
        for (std::size_t i = 0; i < expg_scaled_num.size(); ++i) {
            num = num * y + expg_scaled_num[i];
            den = den * y + denom[i];
        }
    }
    return num / den;
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma requires x > 0, got " + format_double(x));
    if (x < 1.0) {
        // Gamma(x) = Gamma(x + 1) / x; the shifted argument stays in the
        // well-conditioned range of the rational sum.
        return log_gamma(x + 1.0) - std::log(x);
    }
    const double zgh = x + lanczos_g - 0.5;
    return (x - 0.5) * (std::log(zgh) - 1.0) + std::log(evaluate_rational(x));
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

} // namespace monosob

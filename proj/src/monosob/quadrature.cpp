#include "monosob/quadrature.hpp"

#include "monosob/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace monosob {
namespace {

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077282800040394, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

bool by_error(const Panel& x, const Panel& y) { return x.error < y.error; }

} // namespace

QuadratureResult gauss_kronrod_21(const std::function<double(double)>& f, double a, double b) {
    constexpr double epmach = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::abs(hlgth);

    std::array<double, 10> fv1{};
    std::array<double, 10> fv2{};
    const double fc = f(centr);
    double resg = 0.0;
    double resk = wgk[10] * fc;
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 5; ++j) {
        const std::size_t jtw = 2 * j + 1;
        const double absc = hlgth * xgk[jtw];
        const double f1 = f(centr - absc);
        const double f2 = f(centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += wg[j] * (f1 + f2);
        resk += wgk[jtw] * (f1 + f2);
        resabs += wgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (std::size_t j = 0; j < 5; ++j) {
        const std::size_t jtwm1 = 2 * j;
        const double absc = hlgth * xgk[jtwm1];
        const double f1 = f(centr - absc);
        const double f2 = f(centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += wgk[jtwm1] * (f1 + f2);
        resabs += wgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = resk * 0.5;
    double resasc = wgk[10] * std::abs(fc - reskh);
    for (std::size_t j = 0; j < 10; ++j) resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    QuadratureResult out;
    out.value = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * epmach)) err = std::max(epmach * 50.0 * resabs, err);
    out.abs_error = err;
    out.panels = 1;
    out.evaluations = 21;
    out.converged = true;
    return out;
}

QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                           const QuadratureOptions& options) {
    if (breakpoints.size() < 2) throw InputError("integrate needs at least two breakpoints");
    std::vector<Panel> heap;
    heap.reserve(static_cast<std::size_t>(options.max_panels) + breakpoints.size());
    QuadratureResult out;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) throw InputError("integrate breakpoints must be strictly increasing");
        const auto r = gauss_kronrod_21(f, a, b);
        out.evaluations += r.evaluations;
        heap.push_back({a, b, r.value, r.abs_error});
    }
    if (!std::all_of(heap.begin(), heap.end(), [](const Panel& p) { return std::isfinite(p.value); }))
        throw NumericalError("integrand produced a non-finite value");
    std::make_heap(heap.begin(), heap.end(), by_error);

    auto totals = [&heap]() {
        double v = 0.0;
        double e = 0.0;
        for (const auto& p : heap) {
            v += p.value;
            e += p.error;
        }
        return std::pair{v, e};
    };

    auto [value, error] = totals();
    int since_resum = 0;
    while (error > std::max(options.abs_floor, options.rel_tol * std::abs(value)) &&
           static_cast<int>(heap.size()) < options.max_panels) {
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Panel worst = heap.back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Cannot split further at machine resolution; give up on it.
            heap.back().error = 0.0;
            std::push_heap(heap.begin(), heap.end(), by_error);
            std::tie(value, error) = totals();
            if (error == 0.0) break;
            continue;
        }
        heap.pop_back();
        const auto left = gauss_kronrod_21(f, worst.a, mid);
        const auto right = gauss_kronrod_21(f, mid, worst.b);
        out.evaluations += 42;
        if (!std::isfinite(left.value) || !std::isfinite(right.value))
            throw NumericalError("integrand produced a non-finite value");
        heap.push_back({worst.a, mid, left.value, left.abs_error});
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back({mid, worst.b, right.value, right.abs_error});
        std::push_heap(heap.begin(), heap.end(), by_error);
        value += left.value + right.value - worst.value;
        error += left.abs_error + right.abs_error - worst.error;
        if (++since_resum == 64) {
            std::tie(value, error) = totals();
            since_resum = 0;
        }
    }
    std::tie(value, error) = totals();
    out.value = value;
    out.abs_error = error;
    out.panels = static_cast<int>(heap.size());
    out.converged = error <= std::max(options.abs_floor, options.rel_tol * std::abs(value));
    return out;
}

} // namespace monosob

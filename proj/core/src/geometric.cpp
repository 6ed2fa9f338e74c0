#include "fcpool/geometric.hpp"

#include <cmath>
#include <numbers>

#include "fcpool/errors.hpp"

namespace fcpool {

namespace {

constexpr double kGuardBand = 1e-9;
constexpr double kAverageBand = 1e-6;
constexpr double kAverageRadius = 1e-4;

void check_r(double r)
{
    if (!(r >= 0.0 && r < 1.0)) {
        throw DomainError("r must lie in [0, 1)");
    }
}

void check_p(double p)
{
    if (!(p >= 0.0 && p < 1.0)) {
        throw DomainError("p must lie in [0, 1)");
    }
}

void check_z(double z)
{
    if (!(z > 0.0 && z <= 1.0)) {
        throw DomainError("z must lie in (0, 1]");
    }
}

GeometricHelpers helpers_at(GeometricPoolParams const& q, double r, Complex z)
{
    double const xi = q.xi();
    double const mg = q.mu + q.gamma;
    Complex const pole = q.mu - mg * z;
    Complex const h1 = mg * (1.0 - z) / pole * (q.lambda * q.mu / (mg * xi - r * q.mu * q.lambda));
    Complex const h2 = q.gamma / pole * (q.mu / mg) * (q.lambda / (xi - q.lambda * r * z));
    Complex const f = (q.gamma / mg) / (1.0 - r) * (xi - q.lambda * r) / (xi - q.lambda * r * z);
    return {h1, h2, f, h2 - f};
}

// Bracket shared by the M0 and G expressions.
struct Pieces {
    KernelRoots roots;
    Complex h1_factor;  // (lambda mu r - (mu+gamma) xi) / (mu + gamma - p* mu) * H1
    Complex j_factor;   // (lambda r z - xi) / (1 - p* z) * J
};

Pieces pieces_at(GeometricPoolParams const& q, double r, Complex z)
{
    KernelRoots const rt = roots(q, r);
    GeometricHelpers const hp = helpers_at(q, r, z);
    double const xi = q.xi();
    double const mg = q.mu + q.gamma;
    Complex const h1_factor = (q.lambda * q.mu * r - mg * xi) / (mg - rt.small * q.mu) * hp.h1;
    Complex const j_factor = (q.lambda * r * z - xi) / (1.0 - rt.small * z) * hp.j;
    return {rt, h1_factor, j_factor};
}

Complex m0_at(GeometricPoolParams const& q, double r, Complex z)
{
    Pieces const pc = pieces_at(q, r, z);
    double const p_hat = pc.roots.large;
    double const lg = q.lambda + q.gamma;
    double const denom = lg * p_hat - q.lambda * r;
    Complex const inner = (q.mu / (q.mu + q.gamma)) * pc.h1_factor - z * pc.j_factor;
    return lg * p_hat / denom + q.gamma * r * p_hat / ((1.0 - r) * denom) -
           (q.lambda * r / q.mu) / denom * inner;
}

Complex g_at(GeometricPoolParams const& q, double p, double r, Complex z)
{
    Pieces const pc = pieces_at(q, r, z);
    double const p_hat = pc.roots.large;
    Complex const mzero = m0_at(q, r, z);
    // lambda r / p* equals mu p-hat, which stays finite at r = 0.
    Complex const rhs = -q.mu * p_hat * mzero +
                        p * q.mu / (q.mu + q.gamma - p * q.mu) * pc.h1_factor -
                        p * z / (1.0 - p * z) * pc.j_factor;
    return rhs / (q.mu * (p - p_hat));
}

// Guard the excluded points z = mu/xi and z = mu/(mu+gamma); average over a
// small complex circle in the band around them.
template <class Fn>
double guarded(GeometricPoolParams const& q, double z, Fn&& fn)
{
    double const singular[] = {q.mu / q.xi(), q.mu / (q.mu + q.gamma)};
    double nearest = 1.0;
    for (double const s : singular) {
        nearest = std::min(nearest, std::abs(z - s));
    }
    if (nearest < kGuardBand) {
        throw SingularityGuard("z is within 1e-9 of an excluded point (mu/xi or mu/(mu+gamma))");
    }
    if (nearest >= kAverageBand) {
        return fn(Complex(z, 0.0)).real();
    }
    Complex total = 0.0;
    for (int i = 0; i < 4; ++i) {
        total += fn(z + std::polar(kAverageRadius, i * std::numbers::pi / 2.0));
    }
    return (total / 4.0).real();
}

}  // namespace

GeometricPoolParams::GeometricPoolParams(double arrival_rate, double service_rate,
                                         double killing_rate)
    : lambda(arrival_rate), mu(service_rate), gamma(killing_rate)
{
    if (!(lambda > 0.0 && mu > 0.0 && gamma > 0.0)) {
        throw ParameterError("geometric pool needs lambda, mu, gamma > 0");
    }
}

GeometricPoolParams GeometricPoolParams::from_model(RatePlan const& plan, ServiceLaw const& law,
                                                    double gamma)
{
    auto const* exp = std::get_if<ExponentialService>(&law.family());
    if (exp == nullptr) {
        throw ParameterError("geometric pool closed form requires exponential service");
    }
    if (plan.kind() != RatePlan::Kind::constant) {
        throw ParameterError("geometric pool closed form requires a constant rate plan");
    }
    return {plan.base_rate(), exp->rate, gamma};
}

KernelRoots roots(GeometricPoolParams const& params, double r)
{
    check_r(r);
    double const xi = params.xi();
    double const disc = std::sqrt(xi * xi - 4.0 * params.mu * params.lambda * r);
    // Cancellation-free forms of both roots.
    double const large = (xi + disc) / (2.0 * params.mu);
    double const small = 2.0 * params.lambda * r / (xi + disc);
    return {small, large};
}

GeometricHelpers helpers(GeometricPoolParams const& params, double r, double z)
{
    check_r(r);
    check_z(z);
    double const singular = params.mu / (params.mu + params.gamma);
    if (std::abs(z - singular) < kGuardBand) {
        throw SingularityGuard("H1 and H2 have a pole at z = mu/(mu+gamma)");
    }
    return helpers_at(params, r, Complex(z, 0.0));
}

double m0(GeometricPoolParams const& params, double r, double z)
{
    check_r(r);
    check_z(z);
    return guarded(params, z, [&](Complex zz) { return m0_at(params, r, zz); });
}

double g(GeometricPoolParams const& params, double p, double r, double z)
{
    check_p(p);
    check_r(r);
    check_z(z);
    return guarded(params, z, [&](Complex zz) { return g_at(params, p, r, zz); });
}

double mixed_pgf(GeometricPoolParams const& params, double p, double r, double z)
{
    return (1.0 - p) * (1.0 - r) * g(params, p, r, z);
}

}  // namespace fcpool

#include "logconfit/likelihood.hpp"

#include <cmath>
#include <stdexcept>

namespace logconfit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_length(const ReducedData& data, const PhiVector& phi) {
    if (static_cast<int>(phi.size()) != data.m()) {
        throw std::invalid_argument("phi length does not match grid size");
    }
}

} // namespace

double loglik(const ReducedData& data, const PhiVector& phi) {
    check_length(data, phi);
    double s = 0.0;
    for (const auto& o : data.obs) {
        switch (o.cls) {
        case ObsClass::LeftTail:
            s += o.weight * phi_at(phi, o.r);
            break;
        case ObsClass::RightCensored: {
            const double pl = phi[o.l - 1];
            if (!(pl < 0.0)) return kNegInf;
            s += o.weight * std::log(-std::expm1(pl));
            break;
        }
        case ObsClass::Interior: {
            const double pl = phi[o.l - 1];
            const double pr = phi[o.r - 1];
            if (!(pr > pl)) return kNegInf;
            // log(e^a - e^b) = a + log1p(-e^{b-a}) for a > b
            s += o.weight * (pr + std::log1p(-std::exp(pl - pr)));
            break;
        }
        case ObsClass::Vacuous:
            break;
        }
    }
    return s;
}

std::vector<double> grad(const ReducedData& data, const PhiVector& phi) {
    check_length(data, phi);
    const int m = data.m();
    std::vector<double> g(m, 0.0);
    for (const auto& o : data.obs) {
        switch (o.cls) {
        case ObsClass::LeftTail:
            g[o.r - 1] += o.weight;
            break;
        case ObsClass::RightCensored: {
            const double pl = phi[o.l - 1];
            if (!(pl < 0.0)) {
                throw std::domain_error("grad: phi outside dom(l)");
            }
            g[o.l - 1] -= o.weight / std::expm1(-pl);
            break;
        }
        case ObsClass::Interior: {
            const double pl = phi[o.l - 1];
            const double pr = phi[o.r - 1];
            if (!(pr > pl)) {
                throw std::domain_error("grad: phi outside dom(l)");
            }
            g[o.r - 1] += o.weight / (-std::expm1(pl - pr));
            g[o.l - 1] -= o.weight / std::expm1(pr - pl);
            break;
        }
        case ObsClass::Vacuous:
            break;
        }
    }
    return g;
}

std::vector<double> hess_diag(const ReducedData& data, const PhiVector& phi) {
    check_length(data, phi);
    const int m = data.m();
    std::vector<double> h(m, 0.0);
    for (const auto& o : data.obs) {
        switch (o.cls) {
        case ObsClass::RightCensored: {
            const double pl = phi[o.l - 1];
            if (!(pl < 0.0)) {
                throw std::domain_error("hess_diag: phi outside dom(l)");
            }
            const double e = std::expm1(-pl);
            h[o.l - 1] -= o.weight * std::exp(-pl) / (e * e);
            break;
        }
        case ObsClass::Interior: {
            const double pl = phi[o.l - 1];
            const double pr = phi[o.r - 1];
            if (!(pr > pl)) {
                throw std::domain_error("hess_diag: phi outside dom(l)");
            }
            const double t = std::exp(pl - pr);
            const double u = -std::expm1(pl - pr); // 1 - e^{pl-pr}
            h[o.r - 1] -= o.weight * t / (u * u);
            const double v = std::expm1(pr - pl);
            h[o.l - 1] -= o.weight * std::exp(pr - pl) / (v * v);
            break;
        }
        default:
            break;
        }
    }
    return h;
}

double loglik_F(const ReducedData& data, const std::vector<double>& F) {
    if (static_cast<int>(F.size()) != data.m()) {
        throw std::invalid_argument("F length does not match grid size");
    }
    auto F_at = [&](int j) { return j == data.m() + 1 ? 1.0 : F[j - 1]; };
    double s = 0.0;
    for (const auto& o : data.obs) {
        switch (o.cls) {
        case ObsClass::LeftTail: {
            const double fr = F_at(o.r);
            if (!(fr > 0.0)) return kNegInf;
            s += o.weight * std::log(fr);
            break;
        }
        case ObsClass::RightCensored: {
            const double fl = F[o.l - 1];
            if (!(fl < 1.0)) return kNegInf;
            s += o.weight * std::log1p(-fl);
            break;
        }
        case ObsClass::Interior: {
            const double diff = F_at(o.r) - F[o.l - 1];
            if (!(diff > 0.0)) return kNegInf;
            s += o.weight * std::log(diff);
            break;
        }
        case ObsClass::Vacuous:
            break;
        }
    }
    return s;
}

} // namespace logconfit

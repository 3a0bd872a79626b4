#include "cylsat/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cylsat {

GalerkinSystem GalerkinSystem::assemble(int cap, double nu, const DomainLengths& L,
                                        const std::vector<std::pair<EigenId, double>>& forcing) {
    GalerkinSystem sys;
    sys.uni_ = std::make_shared<Universe>(cap);
    sys.nu_ = nu;
    const Universe& uni = *sys.uni_;
    Projector P(uni, L);
    const int n = int(uni.size());

    const double pi2 = pi_double() * pi_double();
    sys.lambda_over_nu_.resize(std::size_t(n));
    sys.gram_.resize(std::size_t(n));
    sys.gram_curl_.resize(std::size_t(n));
    std::vector<Rat> gram_exact(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos) {
        Eigenfunction e = build(uni.id(pos), L);
        gram_exact[std::size_t(pos)] = P.gram(pos).value;
        sys.lambda_over_nu_[std::size_t(pos)] = pi2 * rat_double(e.lambda_coeff);
        sys.gram_[std::size_t(pos)] = rat_double(gram_exact[std::size_t(pos)]);
        // <curl e, curl e> = pi^2 lambda_coeff <e, e>, exactly
        sys.gram_curl_[std::size_t(pos)] =
            pi2 * rat_double(e.lambda_coeff * gram_exact[std::size_t(pos)]);
    }

    // Interaction tensor via exact advection + projection; antisymmetry
    // <(e_a.grad)e_b, e_c> = -<(e_a.grad)e_c, e_b> is checked exactly.
    // Modes beyond the cap are orthogonal to every retained basis element, so
    // dropping them before projection is the Galerkin truncation itself.
    const auto Lx = L.exact();
    auto truncate = [cap](const TrigVectorField& f) {
        TrigVectorField out;
        for (int c = 0; c < 3; ++c) {
            for (const auto& t : f.comp[c].terms())
                if (t.k[0] <= cap && t.k[1] <= cap && t.k[2] <= cap)
                    out.comp[c].add_term(t.f, t.k, t.pi_pow, t.coeff);
            out.comp[c].finalize();
        }
        return out;
    };
    std::map<std::tuple<int, int, int>, Rat> exact_entries;
    for (int a = 0; a < n; ++a) {
        const TrigVectorField& fa = P.field(a);
        for (int b = 0; b < n; ++b) {
            TrigVectorField adv = truncate(advect(fa, P.field(b), Lx));
            if (adv.is_zero()) continue;
            EigenCoords coords = P.project(adv);
            for (const auto& [c, v] : coords.entries) {
                const Rat value = v.pi_pow == 1 ? v.value : Rat(0);
                if (v.pi_pow != 1 && !v.zero())
                    throw std::logic_error("tensor entry with unexpected pi power");
                exact_entries[{a, b, c}] = value;  // coefficient of pi
            }
        }
    }
    for (const auto& [key, value] : exact_entries) {
        auto [a, b, c] = key;
        // raw <.,.> antisymmetry in (b, c) after undoing the Gram division
        Rat lhs = value * gram_exact[std::size_t(c)];
        Rat rhs(0);
        auto it = exact_entries.find({a, c, b});
        if (it != exact_entries.end()) rhs = it->second * gram_exact[std::size_t(b)];
        if (!is_zero(lhs + rhs))
            throw std::logic_error("tensor antisymmetry violated; assembly is inconsistent");
        sys.tensor_.push_back({a, b, c, pi_double() * rat_double(value)});
    }

    sys.forcing_.assign(std::size_t(n), 0.0);
    for (const auto& [id, value] : forcing) {
        const int pos = uni.index_of(id);
        if (pos < 0) throw std::invalid_argument("forcing id outside the universe");
        sys.forcing_[std::size_t(pos)] = value;
    }
    return sys;
}

void GalerkinSystem::rhs(const std::vector<double>& u, const std::vector<double>& eta,
                         std::vector<double>& out) const {
    const std::size_t n = lambda_over_nu_.size();
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = -nu_ * lambda_over_nu_[i] * u[i] - forcing_[i] + (eta.empty() ? 0.0 : eta[i]);
    for (const auto& t : tensor_)
        out[std::size_t(t.c)] -= t.value * u[std::size_t(t.a)] * u[std::size_t(t.b)];
}

void GalerkinSystem::rhs_jacobian_transpose(const std::vector<double>& u,
                                            const std::vector<double>& v,
                                            std::vector<double>& out) const {
    const std::size_t n = lambda_over_nu_.size();
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i] = -nu_ * lambda_over_nu_[i] * v[i];
    for (const auto& t : tensor_) {
        // d/du_a and d/du_b of -T u_a u_b, transposed onto v_c
        out[std::size_t(t.a)] -= t.value * u[std::size_t(t.b)] * v[std::size_t(t.c)];
        out[std::size_t(t.b)] -= t.value * u[std::size_t(t.a)] * v[std::size_t(t.c)];
    }
}

double GalerkinSystem::l2_norm(const std::vector<double>& u) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * u[i] * gram_[i];
    return std::sqrt(acc);
}

double GalerkinSystem::v_norm(const std::vector<double>& u) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * u[i] * gram_curl_[i];
    return std::sqrt(acc);
}

int ControlParam::segment_of(double t, double total_time) const {
    if (segments <= 0) return 0;
    int s = int(t / total_time * segments);
    return std::clamp(s, 0, segments - 1);
}

std::vector<double> ControlParam::eta_at(int dim, double t, double total_time) const {
    std::vector<double> eta(std::size_t(dim), 0.0);
    if (basis.empty() || coeff.empty()) return eta;
    const int s = segment_of(t, total_time);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        const double c = coeff[std::size_t(s) * basis.size() + r];
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < basis[r].size(); ++i) eta[i] += c * basis[r][i];
    }
    return eta;
}

void Trajectory::fill_distance(const GalerkinSystem& sys, const std::vector<double>& target) {
    distance.clear();
    std::vector<double> diff(target.size());
    for (const auto& u : states) {
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = u[i] - target[i];
        distance.push_back(sys.v_norm(diff));
    }
}

std::string Trajectory::to_csv() const {
    std::ostringstream os;
    os << "t,energy,vnorm" << (distance.empty() ? "" : ",distance") << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << times[i] << "," << energy[i] << "," << vnorm[i];
        if (!distance.empty()) os << "," << distance[i];
        os << "\n";
    }
    return os.str();
}

namespace {

void rk4_step(const GalerkinSystem& sys, std::vector<double>& u, const std::vector<double>& eta,
              double dt, std::vector<double>& k1, std::vector<double>& k2, std::vector<double>& k3,
              std::vector<double>& k4, std::vector<double>& tmp) {
    const std::size_t n = u.size();
    sys.rhs(u, eta, k1);
    tmp.resize(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
    sys.rhs(tmp, eta, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
    sys.rhs(tmp, eta, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
    sys.rhs(tmp, eta, k4);
    for (std::size_t i = 0; i < n; ++i)
        u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

Trajectory integrate(const GalerkinSystem& sys, const std::vector<double>& u0,
                     const ControlParam& eta, double T, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("integrate: dt must be positive");
    const long nsteps = std::lround(T / dt);
    if (std::abs(nsteps * dt - T) > 1e-9 * std::max(1.0, T))
        throw std::invalid_argument("integrate: T must be an integral number of steps");
    Trajectory tr;
    std::vector<double> u = u0;
    u.resize(std::size_t(sys.dim()), 0.0);
    std::vector<double> k1, k2, k3, k4, tmp;
    auto record = [&](double t) {
        tr.times.push_back(t);
        tr.states.push_back(u);
        tr.energy.push_back(sys.l2_norm(u));
        tr.vnorm.push_back(sys.v_norm(u));
    };
    record(0.0);
    for (long s = 0; s < nsteps; ++s) {
        const double t = double(s) * dt;
        std::vector<double> eta_vec = eta.eta_at(sys.dim(), t + 0.5 * dt, T);
        rk4_step(sys, u, eta_vec, dt, k1, k2, k3, k4, tmp);
        for (double x : u)
            if (!std::isfinite(x)) throw BlowUpError(int(s));
        record(double(s + 1) * dt);
    }
    return tr;
}

SteerResult steer(const GalerkinSystem& sys, const std::vector<double>& u0,
                  const std::vector<double>& target, double T, double dt,
                  const std::vector<std::vector<double>>& control_basis,
                  const SteerOptions& opt) {
    const int n = sys.dim();
    const long nsteps = std::lround(T / dt);
    const std::size_t nb = control_basis.size();
    SteerResult res;
    res.control.basis = control_basis;
    res.control.segments = opt.segments;
    res.control.coeff.assign(std::size_t(opt.segments) * nb, 0.0);
    if (!opt.initial_coeff.empty()) {
        if (opt.initial_coeff.size() != res.control.coeff.size())
            throw std::invalid_argument("steer: initial control has the wrong shape");
        res.control.coeff = opt.initial_coeff;
    }

    std::vector<double> t0 = target;
    t0.resize(std::size_t(n), 0.0);

    auto final_state = [&](const ControlParam& ctl) {
        std::vector<double> u = u0;
        u.resize(std::size_t(n), 0.0);
        std::vector<double> k1, k2, k3, k4, tmp;
        for (long s = 0; s < nsteps; ++s) {
            auto eta = ctl.eta_at(n, (double(s) + 0.5) * dt, T);
            rk4_step(sys, u, eta, dt, k1, k2, k3, k4, tmp);
        }
        return u;
    };

    auto distance = [&](const std::vector<double>& uT) {
        std::vector<double> d(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) d[std::size_t(i)] = uT[std::size_t(i)] - t0[std::size_t(i)];
        return sys.v_norm(d);
    };

    {
        ControlParam zero_ctl;
        zero_ctl.basis = control_basis;
        zero_ctl.segments = opt.segments;
        zero_ctl.coeff.assign(std::size_t(opt.segments) * nb, 0.0);
        res.baseline = distance(final_state(zero_ctl));
    }
    res.achieved = distance(final_state(res.control));

    // Discrete adjoint of the RK4 sweep: gradient of J = |u(T) - target|_V^2
    // with respect to the per-segment control coefficients.
    std::vector<std::vector<double>> states(std::size_t(nsteps) + 1);
    auto gradient = [&](const ControlParam& ctl, std::vector<double>& grad, double* j_out) {
        std::vector<double> u = u0;
        u.resize(std::size_t(n), 0.0);
        std::vector<double> k1, k2, k3, k4, tmp;
        states[0] = u;
        for (long s = 0; s < nsteps; ++s) {
            auto eta = ctl.eta_at(n, (double(s) + 0.5) * dt, T);
            rk4_step(sys, u, eta, dt, k1, k2, k3, k4, tmp);
            states[std::size_t(s) + 1] = u;
        }
        std::vector<double> diff(static_cast<std::size_t>(n));
        double j = 0.0;
        for (int i = 0; i < n; ++i) {
            diff[std::size_t(i)] = u[std::size_t(i)] - t0[std::size_t(i)];
            j += diff[std::size_t(i)] * diff[std::size_t(i)] * sys.gram_curl(i);
        }
        *j_out = j;
        std::vector<double> ubar(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) ubar[std::size_t(i)] = 2.0 * diff[std::size_t(i)] * sys.gram_curl(i);

        grad.assign(std::size_t(opt.segments) * nb, 0.0);
        std::vector<double> kk1(static_cast<std::size_t>(n)), kk2(static_cast<std::size_t>(n)), kk3(static_cast<std::size_t>(n)),
            kk4(static_cast<std::size_t>(n));
        std::vector<double> x2(static_cast<std::size_t>(n)), x3(static_cast<std::size_t>(n)), x4(static_cast<std::size_t>(n));
        std::vector<double> kb(static_cast<std::size_t>(n)), xb(static_cast<std::size_t>(n)), etabar(static_cast<std::size_t>(n));
        for (long s = nsteps - 1; s >= 0; --s) {
            const std::vector<double>& us = states[std::size_t(s)];
            auto eta = ctl.eta_at(n, (double(s) + 0.5) * dt, T);
            sys.rhs(us, eta, kk1);
            for (int i = 0; i < n; ++i) x2[std::size_t(i)] = us[std::size_t(i)] + 0.5 * dt * kk1[std::size_t(i)];
            sys.rhs(x2, eta, kk2);
            for (int i = 0; i < n; ++i) x3[std::size_t(i)] = us[std::size_t(i)] + 0.5 * dt * kk2[std::size_t(i)];
            sys.rhs(x3, eta, kk3);
            for (int i = 0; i < n; ++i) x4[std::size_t(i)] = us[std::size_t(i)] + dt * kk3[std::size_t(i)];

            std::fill(etabar.begin(), etabar.end(), 0.0);
            std::vector<double> unew_bar = ubar;  // dJ/du_{s+1}
            std::vector<double> ubar_acc = unew_bar;

            // k4
            for (int i = 0; i < n; ++i) kb[std::size_t(i)] = dt / 6.0 * unew_bar[std::size_t(i)];
            sys.rhs_jacobian_transpose(x4, kb, xb);
            for (int i = 0; i < n; ++i) etabar[std::size_t(i)] += kb[std::size_t(i)];
            for (int i = 0; i < n; ++i) ubar_acc[std::size_t(i)] += xb[std::size_t(i)];
            std::vector<double> k3bar(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) k3bar[std::size_t(i)] = dt * xb[std::size_t(i)];
            // k3
            for (int i = 0; i < n; ++i) kb[std::size_t(i)] = dt / 3.0 * unew_bar[std::size_t(i)] + k3bar[std::size_t(i)];
            sys.rhs_jacobian_transpose(x3, kb, xb);
            for (int i = 0; i < n; ++i) etabar[std::size_t(i)] += kb[std::size_t(i)];
            for (int i = 0; i < n; ++i) ubar_acc[std::size_t(i)] += xb[std::size_t(i)];
            std::vector<double> k2bar(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) k2bar[std::size_t(i)] = 0.5 * dt * xb[std::size_t(i)];
            // k2
            for (int i = 0; i < n; ++i) kb[std::size_t(i)] = dt / 3.0 * unew_bar[std::size_t(i)] + k2bar[std::size_t(i)];
            sys.rhs_jacobian_transpose(x2, kb, xb);
            for (int i = 0; i < n; ++i) etabar[std::size_t(i)] += kb[std::size_t(i)];
            for (int i = 0; i < n; ++i) ubar_acc[std::size_t(i)] += xb[std::size_t(i)];
            std::vector<double> k1bar(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) k1bar[std::size_t(i)] = 0.5 * dt * xb[std::size_t(i)];
            // k1
            for (int i = 0; i < n; ++i) kb[std::size_t(i)] = dt / 6.0 * unew_bar[std::size_t(i)] + k1bar[std::size_t(i)];
            sys.rhs_jacobian_transpose(us, kb, xb);
            for (int i = 0; i < n; ++i) etabar[std::size_t(i)] += kb[std::size_t(i)];
            for (int i = 0; i < n; ++i) ubar_acc[std::size_t(i)] += xb[std::size_t(i)];

            const int seg = res.control.segment_of((double(s) + 0.5) * dt, T);
            for (std::size_t r = 0; r < nb; ++r) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += etabar[std::size_t(i)] * control_basis[r][std::size_t(i)];
                grad[std::size_t(seg) * nb + r] += dot;
            }
            ubar = std::move(ubar_acc);
        }
    };

    // Adam with fixed hyperparameters; deterministic for a given config.
    std::vector<double> m(res.control.coeff.size(), 0.0), v(res.control.coeff.size(), 0.0);
    std::vector<double> grad;
    const double b1 = 0.9, b2 = 0.999, eps = 1e-12;
    double best = res.achieved;
    std::vector<double> best_coeff = res.control.coeff;
    int it = 0;
    for (; it < opt.max_iters; ++it) {
        double j = 0.0;
        gradient(res.control, grad, &j);
        const double dist = std::sqrt(std::max(0.0, j));
        if (dist < best) {
            best = dist;
            best_coeff = res.control.coeff;
        }
        if (best <= opt.tolerance) break;
        for (std::size_t i = 0; i < grad.size(); ++i) {
            m[i] = b1 * m[i] + (1 - b1) * grad[i];
            v[i] = b2 * v[i] + (1 - b2) * grad[i] * grad[i];
            const double mh = m[i] / (1 - std::pow(b1, it + 1));
            const double vh = v[i] / (1 - std::pow(b2, it + 1));
            res.control.coeff[i] -= opt.learning_rate * mh / (std::sqrt(vh) + eps);
        }
    }
    res.iterations = it;
    res.control.coeff = best_coeff;
    res.achieved = best;
    res.stagnated = res.achieved > opt.tolerance && res.achieved >= 0.999 * res.baseline;
    return res;
}

std::vector<std::vector<double>> control_basis_g1(const SetSpec& generators, int cap,
                                                  const DomainLengths& L) {
    ChainResult chain = generate_chain(generators, 1, cap, L, SpanMode::Exact);
    std::vector<std::vector<double>> basis;
    for (const auto& row : chain.space->accepted()) {
        std::vector<double> v(chain.ctx->universe().size(), 0.0);
        double norm = 0.0;
        for (const auto& [pos, z] : row.original) {
            v[std::size_t(pos)] = mpz_get_d(z.get_mpz_t());
            norm += v[std::size_t(pos)] * v[std::size_t(pos)];
        }
        norm = std::sqrt(norm);
        if (norm > 0)
            for (double& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace cylsat

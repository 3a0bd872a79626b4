#pragma once

#include <memory>

#include "cylsat/span.hpp"

namespace cylsat {

/// Finite-dimensional truncation of  du/dt + A u + B(u,u) + h = eta  in
/// eigen-coordinates. The interaction tensor is computed exactly through the
/// bracket machinery and evaluated to floating point once, at assembly.
class GalerkinSystem {
  public:
    struct TensorEntry {
        int a, b, c;
        double value;  // T[a][b][c] = <(e_a.grad)e_b, e_c> / <e_c,e_c>
    };

    static GalerkinSystem assemble(int cap, double nu, const DomainLengths& L,
                                   const std::vector<std::pair<EigenId, double>>& forcing = {});

    int dim() const { return int(lambda_over_nu_.size()); }
    const Universe& universe() const { return *uni_; }
    double nu() const { return nu_; }
    const std::vector<TensorEntry>& tensor() const { return tensor_; }
    double lambda(int pos) const { return nu_ * lambda_over_nu_[std::size_t(pos)]; }
    double gram(int pos) const { return gram_[std::size_t(pos)]; }
    double gram_curl(int pos) const { return gram_curl_[std::size_t(pos)]; }

    /// du/dt = -A u - B(u,u) - h + eta.
    void rhs(const std::vector<double>& u, const std::vector<double>& eta,
             std::vector<double>& out) const;

    /// out += Jf(u)^T v  (adjoint action of the rhs Jacobian).
    void rhs_jacobian_transpose(const std::vector<double>& u, const std::vector<double>& v,
                                std::vector<double>& out) const;

    double l2_norm(const std::vector<double>& u) const;
    double v_norm(const std::vector<double>& u) const;

  private:
    std::shared_ptr<Universe> uni_;
    double nu_ = 1.0;
    std::vector<double> lambda_over_nu_;  // pi^2 sum (k_i/L_i)^2
    std::vector<double> gram_;
    std::vector<double> gram_curl_;
    std::vector<TensorEntry> tensor_;
    std::vector<double> forcing_;

    friend struct GalerkinAccess;
};

/// Piecewise-constant control over a uniform time grid, valued in the span of
/// the given coordinate directions (a basis of G^1 in the steering runs).
struct ControlParam {
    std::vector<std::vector<double>> basis;  // directions in coordinate space
    int segments = 1;
    std::vector<double> coeff;  // segments x basis.size(), row-major

    std::vector<double> eta_at(int dim, double t, double total_time) const;
    int segment_of(double t, double total_time) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<double> energy;  // L2 norm per step
    std::vector<double> vnorm;
    std::vector<double> distance;  // V-distance to a target, when one is set

    void fill_distance(const GalerkinSystem& sys, const std::vector<double>& target);
    std::string to_csv() const;
};

struct BlowUpError : std::runtime_error {
    int step;
    explicit BlowUpError(int s)
        : std::runtime_error("state became nonfinite at step " + std::to_string(s)), step(s) {}
};

/// Classical fixed-step fourth-order integration; dt must divide T.
Trajectory integrate(const GalerkinSystem& sys, const std::vector<double>& u0,
                     const ControlParam& eta, double T, double dt);

struct SteerOptions {
    int segments = 8;
    int max_iters = 400;
    double learning_rate = 0.05;
    double tolerance = 0.0;  // stop when achieved distance falls below
    uint64_t seed = 0;       // recorded in reports; the optimizer is deterministic
    std::vector<double> initial_coeff;  // warm start (segments x basis), optional
};

struct SteerResult {
    ControlParam control;
    double achieved = 0.0;   // |u(T) - target|_V
    double baseline = 0.0;   // uncontrolled distance
    int iterations = 0;
    bool stagnated = false;
};

/// Gradient steering of u(T) toward the target in the V-metric, gradients by
/// the discrete adjoint of the integrator.
SteerResult steer(const GalerkinSystem& sys, const std::vector<double>& u0,
                  const std::vector<double>& target, double T, double dt,
                  const std::vector<std::vector<double>>& control_basis, const SteerOptions& opt);

/// Basis of G^1 = span(C union B(C, C)) as coordinate vectors, from the span
/// engine's accepted rows.
std::vector<std::vector<double>> control_basis_g1(const SetSpec& generators, int cap,
                                                  const DomainLengths& L);

}  // namespace cylsat

#include "d2dmotif/quadrature.hpp"

#include <Eigen/Eigenvalues>

namespace d2dmotif {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix of
// the orthogonal polynomial recurrence, weights mu0 times the squared first
// components of the eigenvectors.
GaussRule golub_welsch(const Eigen::VectorXd& off_diagonal, double mu0) {
    const Eigen::Index n = off_diagonal.size() + 1;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        jacobi(k, k + 1) = off_diagonal(k);
        jacobi(k + 1, k) = off_diagonal(k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace

GaussRule gauss_legendre(int n, double lo, double hi) {
    if (n < 1) throw DomainError("gauss_legendre: need at least one node");
    if (!(hi > lo)) throw DomainError("gauss_legendre: empty interval");
    Eigen::VectorXd beta(n - 1);
    for (int k = 1; k < n; ++k) beta(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    GaussRule rule = golub_welsch(beta, 2.0);
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        rule.nodes[i] = c + h * rule.nodes[i];
        rule.weights[i] *= h;
    }
    return rule;
}

GaussRule gauss_hermite_normal(int n) {
    if (n < 1) throw DomainError("gauss_hermite_normal: need at least one node");
    Eigen::VectorXd beta(n - 1);
    for (int k = 1; k < n; ++k) beta(k - 1) = std::sqrt(static_cast<double>(k));
    return golub_welsch(beta, 1.0);
}

GaussRule composite_gauss_legendre(int n, int panels, double lo, double hi) {
    if (panels < 1) throw DomainError("composite_gauss_legendre: need at least one panel");
    GaussRule out;
    const double width = (hi - lo) / panels;
    for (int k = 0; k < panels; ++k) {
        const GaussRule r = gauss_legendre(n, lo + k * width, lo + (k + 1) * width);
        out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
        out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
    }
    return out;
}

}  // namespace d2dmotif

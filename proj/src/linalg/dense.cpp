#include "polyschwarz/linalg/dense.hpp"

#include <vector>

#include "polyschwarz/errors.hpp"

namespace polyschwarz::linalg {

Eigen::MatrixXd to_dense(const CsrMatrix& a) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) d(i, cols[p]) += vals[p];
    }
    return d;
}

Eigen::MatrixXd dense_operator(
    Index n, const std::function<void(std::span<const double>, std::span<double>)>& apply) {
    Eigen::MatrixXd d(n, n);
    std::vector<double> e(n, 0.0), col(n);
    for (Index j = 0; j < n; ++j) {
        e[j] = 1.0;
        apply(e, col);
        e[j] = 0.0;
        for (Index i = 0; i < n; ++i) d(i, j) = col[i];
    }
    return d;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
    return es.eigenvalues();
}

double spd_condition_number(const Eigen::MatrixXd& a) {
    const Eigen::VectorXd ev = symmetric_eigenvalues(a);
    if (ev(0) <= 0.0) throw Error("spd_condition_number: matrix is not positive definite");
    return ev(ev.size() - 1) / ev(0);
}

double preconditioned_condition_number(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::MatrixXd bs = 0.5 * (b + b.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(bs);
    if (llt.info() != Eigen::Success) {
        throw Error("preconditioned_condition_number: preconditioner not SPD");
    }
    const Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd s = l.transpose() * a * l;
    s = 0.5 * (s + s.transpose()).eval();
    return spd_condition_number(s);
}

}  // namespace polyschwarz::linalg

#include "entsec/states.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include <Eigen/SVD>
#include <Eigen/Eigenvalues>

namespace entsec {

using json = nlohmann::ordered_json;

PureState::PureState(std::vector<int> dims_, Eigen::VectorXcd amps_)
    : dims(std::move(dims_)), amps(std::move(amps_)) {
    if (dims.empty()) throw input_error("PureState: empty factor list");
    long prod = 1;
    for (int d : dims) {
        if (d < 2) throw input_error("PureState: factor dimension must be >= 2");
        prod *= d;
    }
    if (amps.size() != prod)
        throw input_error("PureState: amplitude length " + std::to_string(amps.size()) +
                          " does not match product of dims " + std::to_string(prod));
    if (amps.norm() == 0.0) throw input_error("PureState: zero state");
}

long PureState::total_dim() const {
    return std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<long>());
}

bool PureState::is_normalized(double tol) const {
    return std::abs(amps.norm() - 1.0) <= tol;
}

PureState PureState::normalized() const {
    PureState out = *this;
    out.amps /= amps.norm();
    return out;
}

long PureState::flat_index(const std::vector<int>& idx) const {
    if (idx.size() != dims.size()) throw input_error("flat_index: wrong arity");
    long f = 0;
    for (size_t i = 0; i < dims.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= dims[i]) throw input_error("flat_index: out of range");
        f = f * dims[i] + idx[i];
    }
    return f;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m_) : m(std::move(m_)) {
    if (m.rows() != m.cols()) throw input_error("DensityMatrix: not square");
    double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > 1e-10)
        throw consistency_error("DensityMatrix: Hermitian defect " + std::to_string(herm_defect));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-10)
        throw consistency_error("DensityMatrix: negative eigenvalue " + std::to_string(ev.minCoeff()));
    return ev;
}

int DensityMatrix::rank(double rel_threshold) const {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_threshold * sv(0)) ++r;
    return r;
}

Eigen::VectorXcd SchmidtData::reconstruct() const {
    long nl = left_basis.rows(), nr = right_basis.rows();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(nl * nr);
    for (int k = 0; k < coeffs.size(); ++k) {
        for (long i = 0; i < nl; ++i)
            for (long j = 0; j < nr; ++j)
                out(i * nr + j) += coeffs(k) * left_basis(i, k) * right_basis(j, k);
    }
    return out;
}

namespace {

void check_subset(const PureState& psi, const std::set<int>& s, const char* what) {
    for (int i : s)
        if (i < 0 || i >= psi.factor_count())
            throw input_error(std::string(what) + ": factor index out of range");
}

// Reshape amplitudes into a (left x right) matrix for an arbitrary
// bipartition, left factors slowest among themselves in ascending order.
Eigen::MatrixXcd bipartition_matrix(const PureState& psi, const std::set<int>& left,
                                    const std::set<int>& right) {
    const int n = psi.factor_count();
    if (left.empty() || right.empty())
        throw input_error("bipartition: both sides must be nonempty");
    check_subset(psi, left, "bipartition");
    check_subset(psi, right, "bipartition");
    if (static_cast<int>(left.size() + right.size()) != n)
        throw input_error("bipartition: sides must partition all factors");
    for (int i : left)
        if (right.count(i)) throw input_error("bipartition: sides overlap");

    long dl = 1, dr = 1;
    for (int i : left) dl *= psi.dims[i];
    for (int i : right) dr *= psi.dims[i];

    Eigen::MatrixXcd M(dl, dr);
    std::vector<int> idx(n, 0);
    for (long f = 0; f < psi.total_dim(); ++f) {
        long rem = f;
        for (int i = n - 1; i >= 0; --i) {
            idx[i] = static_cast<int>(rem % psi.dims[i]);
            rem /= psi.dims[i];
        }
        long li = 0, ri = 0;
        for (int i : left) li = li * psi.dims[i] + idx[i];
        for (int i : right) ri = ri * psi.dims[i] + idx[i];
        M(li, ri) = psi.amps(f);
    }
    return M;
}

} // namespace

DensityMatrix partial_trace(const PureState& psi, const std::set<int>& keep) {
    if (keep.empty() || static_cast<int>(keep.size()) >= psi.factor_count())
        throw input_error("partial_trace: keep must be a nonempty proper subset");
    check_subset(psi, keep, "partial_trace");
    std::set<int> traced;
    for (int i = 0; i < psi.factor_count(); ++i)
        if (!keep.count(i)) traced.insert(i);
    Eigen::MatrixXcd M = bipartition_matrix(psi, keep, traced);
    return DensityMatrix(M * M.adjoint());
}

SchmidtData schmidt(const PureState& psi, const std::set<int>& left,
                    const std::set<int>& right) {
    Eigen::MatrixXcd M = bipartition_matrix(psi, left, right);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtData out;
    out.coeffs = svd.singularValues();
    out.left_basis = svd.matrixU();
    out.right_basis = svd.matrixV().conjugate();
    return out;
}

int schmidt_rank(const PureState& psi, const std::set<int>& left,
                 const std::set<int>& right, double rel_threshold) {
    SchmidtData sd = schmidt(psi, left, right);
    if (sd.coeffs.size() == 0 || sd.coeffs(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sd.coeffs.size(); ++i)
        if (sd.coeffs(i) > rel_threshold * sd.coeffs(0)) ++r;
    return r;
}

double entropy(const DensityMatrix& rho) {
    Eigen::VectorXd ev = rho.eigenvalues();
    double tr = ev.sum();
    if (tr <= 0.0) throw input_error("entropy: nonpositive trace");
    double s = 0.0;
    for (int i = 0; i < ev.size(); ++i) {
        double l = ev(i) / tr;
        if (l > 1e-12) s -= l * std::log(l);
    }
    return s;
}

double two_qubit_concurrence_like(const PureState& psi) {
    if (psi.dims != std::vector<int>{2, 2})
        throw input_error("two_qubit_concurrence_like: dims must be (2,2)");
    SchmidtData sd = schmidt(psi.normalized(), {0}, {1});
    return 2.0 * sd.coeffs(0) * sd.coeffs(1);
}

PureState read_state(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error(std::string("read_state: malformed JSON: ") + e.what());
    }
    if (!j.contains("dims") || !j.contains("re") || !j.contains("im"))
        throw input_error("read_state: missing dims/re/im");
    std::vector<int> dims = j["dims"].get<std::vector<int>>();
    std::vector<double> re = j["re"].get<std::vector<double>>();
    std::vector<double> im = j["im"].get<std::vector<double>>();
    if (re.size() != im.size())
        throw input_error("read_state: re/im length mismatch");
    Eigen::VectorXcd amps(re.size());
    for (size_t i = 0; i < re.size(); ++i) amps(i) = cxd(re[i], im[i]);
    return PureState(std::move(dims), std::move(amps));
}

PureState read_state_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw input_error("read_state: cannot open " + path);
    return read_state(f);
}

void write_state(const PureState& psi, std::ostream& out) {
    json j;
    j["dims"] = psi.dims;
    std::vector<double> re(psi.amps.size()), im(psi.amps.size());
    for (long i = 0; i < psi.amps.size(); ++i) {
        re[i] = psi.amps(i).real();
        im[i] = psi.amps(i).imag();
    }
    j["re"] = re;
    j["im"] = im;
    out << j.dump() << "\n";
}

void write_state_file(const PureState& psi, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw input_error("write_state: cannot open " + path);
    write_state(psi, f);
}

PureState make_ghz() {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8);
    a(0) = a(7) = 1.0 / std::sqrt(2.0);
    return PureState({2, 2, 2}, a);
}

PureState make_w() {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8);
    a(1) = a(2) = a(4) = 1.0 / std::sqrt(3.0);
    return PureState({2, 2, 2}, a);
}

PureState make_bell() {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4);
    a(0) = a(3) = 1.0 / std::sqrt(2.0);
    return PureState({2, 2}, a);
}

} // namespace entsec

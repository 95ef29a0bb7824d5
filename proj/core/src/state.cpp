#include "entdiag/state.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "entdiag/kernels.hpp"

namespace entdiag {

StateVector::StateVector(int n_qubits, std::vector<cxd> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_ < 1 || n_ > 24) throw std::invalid_argument("qubit count out of supported range");
    if (amps_.size() != (std::size_t{1} << n_))
        throw std::invalid_argument("amplitude vector size does not match qubit count");
}

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    if (n_qubits < 1 || n_qubits > 24) throw std::invalid_argument("qubit count out of supported range");
    std::vector<cxd> amps(std::size_t{1} << n_qubits, cxd{0.0, 0.0});
    if (index >= amps.size()) throw std::out_of_range("basis index out of range");
    amps[index] = cxd{1.0, 0.0};
    return StateVector(n_qubits, std::move(amps));
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

cxd StateVector::inner(const StateVector& other) const {
    if (n_ != other.n_) throw std::invalid_argument("qubit count mismatch");
    cxd acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
    return acc;
}

void StateVector::check_norm(double tol) const {
    const double nrm = norm();
    if (std::abs(nrm - 1.0) > tol)
        throw std::runtime_error("state norm drifted: |norm-1| = " + std::to_string(std::abs(nrm - 1.0)));
}

void apply_rotation(StateVector& state, int qubit, double phi) {
    kernels::apply_rotation(state.amps(), state.n(), qubit, phi);
}

void apply_cz(StateVector& state, int qi, int qj) {
    kernels::apply_cz(state.amps(), state.n(), qi, qj);
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

void dump_amplitudes(const StateVector& state, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    const uint64_t n = static_cast<uint64_t>(state.n());
    unsigned char header[8];
    for (int i = 0; i < 8; ++i) header[i] = static_cast<unsigned char>((n >> (8 * i)) & 0xff);
    if (std::fwrite(header, 1, 8, f.get()) != 8) throw std::runtime_error("short write to " + path);
    for (const auto& a : state.amps()) {
        const double re = a.real(), im = a.imag();
        if (std::fwrite(&re, sizeof(double), 1, f.get()) != 1 ||
            std::fwrite(&im, sizeof(double), 1, f.get()) != 1)
            throw std::runtime_error("short write to " + path);
    }
}

StateVector load_amplitudes(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("cannot open " + path);
    unsigned char header[8];
    if (std::fread(header, 1, 8, f.get()) != 8) throw std::runtime_error("truncated header in " + path);
    uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= static_cast<uint64_t>(header[i]) << (8 * i);
    if (n < 1 || n > 24) throw std::runtime_error("implausible qubit count in " + path);
    std::vector<cxd> amps(std::size_t{1} << n);
    for (auto& a : amps) {
        double re = 0.0, im = 0.0;
        if (std::fread(&re, sizeof(double), 1, f.get()) != 1 ||
            std::fread(&im, sizeof(double), 1, f.get()) != 1)
            throw std::runtime_error("truncated amplitudes in " + path);
        a = cxd{re, im};
    }
    return StateVector(static_cast<int>(n), std::move(amps));
}

}  // namespace entdiag

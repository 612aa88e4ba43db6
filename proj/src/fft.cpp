#include "torus/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "torus/error.hpp"

namespace torus {

namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::size_t wrap(int k, int n) { return static_cast<std::size_t>(((k % n) + n) % n); }

}  // namespace

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_valid_grid(int n) {
  if (n < 4 || !is_power_of_two(n)) {
    std::ostringstream msg;
    msg << "grid size " << n << " must be a power of two >= 4";
    throw InvalidArgument(msg.str());
  }
}

namespace {
int next_grid(int at_least) {
  int n = 4;
  while (n < at_least) n *= 2;
  return n;
}
}  // namespace

int minimal_grid_size(const SpectralLayout& layout) { return next_grid(2 * layout.bandwidth() + 1); }
int dealias_grid_size(const SpectralLayout& layout) { return next_grid(3 * layout.bandwidth() + 1); }

const GridTransform& GridTransform::get(int n) {
  require_valid_grid(n);
  static std::map<int, std::unique_ptr<GridTransform>> cache;
  std::lock_guard lock(plan_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::unique_ptr<GridTransform>(new GridTransform(n))).first;
  return *it->second;
}

GridTransform::GridTransform(int n) : n_(n), forward_(nullptr), backward_(nullptr) {
  // Caller holds plan_mutex: FFTW planning is not thread-safe.
  std::vector<Complex> scratch(points());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, flags);
}

GridTransform::~GridTransform() {
  std::lock_guard lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

std::vector<double> GridTransform::to_grid(const ScalarField& u) const {
  const auto& layout = u.layout();
  if (n_ < 2 * layout.bandwidth() + 1) {
    std::ostringstream msg;
    msg << "undersampled: grid " << n_ << " cannot represent bandwidth " << layout.bandwidth();
    throw Undersampled(msg.str());
  }
  std::vector<Complex> buf(points(), Complex{});
  auto data = u.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] == Complex{}) continue;
    const WaveVector k = layout.wave_vector(i);
    buf[(wrap(k.k1, n_) * n_ + wrap(k.k2, n_)) * n_ + wrap(k.k3, n_)] = data[i];
  }
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(static_cast<fftw_plan>(backward_), p, p);
  std::vector<double> out(points());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i].real();
  return out;
}

ScalarField GridTransform::from_grid(std::span<const double> samples, const SpectralLayout& layout) const {
  if (samples.size() != points()) throw InvalidArgument("sample count does not match grid size");
  if (n_ < 2 * layout.bandwidth() + 1) {
    std::ostringstream msg;
    msg << "undersampled: grid " << n_ << " cannot resolve bandwidth " << layout.bandwidth();
    throw Undersampled(msg.str());
  }
  std::vector<Complex> buf(samples.begin(), samples.end());
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_), p, p);
  const double scale = 1.0 / static_cast<double>(points());
  ScalarField out(layout);
  auto dst = out.mutable_data();
  for (const auto& k : layout.modes())
    dst[layout.index(k)] = scale * buf[(wrap(k.k1, n_) * n_ + wrap(k.k2, n_)) * n_ + wrap(k.k3, n_)];
  out.symmetrize();
  return out;
}

}  // namespace torus

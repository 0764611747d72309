#include "spatialgen/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "spatialgen/errors.hpp"

namespace spatialgen {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per shape and kept for the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t rows, std::size_t cols, int sign) {
    const Key key{rows, cols, sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t n = rows * cols;
    auto* scratch = fftw_alloc_complex(n);
    fftw_plan plan;
    constexpr unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (rows == 1) {
      plan = fftw_plan_dft_1d(static_cast<int>(cols), scratch, scratch, sign, flags);
    } else {
      plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), scratch, scratch,
                              sign, flags);
    }
    fftw_free(scratch);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  using Key = std::tuple<std::size_t, std::size_t, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

void execute(std::span<Complex> data, std::size_t rows, std::size_t cols, int sign) {
  if (data.size() != rows * cols) throw InvalidParameter("fft: data size does not match shape");
  if (data.empty()) return;
  fftw_plan plan = PlanCache::instance().get(rows, cols, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void fft2_inplace(std::span<Complex> data, std::size_t rows, std::size_t cols) {
  execute(data, rows, cols, FFTW_FORWARD);
}

void ifft2_inplace(std::span<Complex> data, std::size_t rows, std::size_t cols) {
  execute(data, rows, cols, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(rows * cols);
  for (auto& v : data) v *= scale;
}

std::vector<Complex> fft2(std::span<const Complex> data, std::size_t rows, std::size_t cols) {
  std::vector<Complex> out(data.begin(), data.end());
  fft2_inplace(out, rows, cols);
  return out;
}

std::vector<Complex> ifft2(std::span<const Complex> data, std::size_t rows, std::size_t cols) {
  std::vector<Complex> out(data.begin(), data.end());
  ifft2_inplace(out, rows, cols);
  return out;
}

void fft_inplace(std::span<Complex> data) { execute(data, 1, data.size(), FFTW_FORWARD); }

std::vector<Complex> fft(std::span<const Complex> data) {
  std::vector<Complex> out(data.begin(), data.end());
  fft_inplace(out);
  return out;
}

}  // namespace spatialgen

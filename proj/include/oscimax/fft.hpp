#ifndef OSCIMAX_FFT_HPP
#define OSCIMAX_FFT_HPP

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace oscimax::detail {

// Plans are created once per (shape, direction) and reused. Creation is
// serialized; fftw_execute_dft on an existing plan is thread safe.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const std::vector<int>& dims, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(dims, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int d : dims) total *= std::size_t(d);
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    fftw_plan p = fftw_plan_dft(int(dims.size()), dims.data(), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& kv : plans_) fftw_destroy_plan(kv.second);
  }

 private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

/// Unnormalized in-place DFT over a row-major array; sign -1 forward, +1 backward.
inline void dft_inplace(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign) {
  fftw_plan p = PlanCache::instance().get(dims, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace oscimax::detail

#endif  // OSCIMAX_FFT_HPP

#include "ldcflow/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ldc {

std::size_t worker_count() {
  if (const char* env = std::getenv("LDC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace ldc

#include "selberg/parallel.hpp"

#include <cstdlib>
#include <string>

namespace selberg {

unsigned thread_budget() {
  unsigned budget = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SELBERG_SIGNS_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) budget = std::min<unsigned>(budget, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // Unparseable values leave the default in place.
    }
  }
  return budget;
}

}  // namespace selberg

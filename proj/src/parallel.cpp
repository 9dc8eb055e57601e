#include "coengage/parallel.hpp"

#include <cstdlib>
#include <string>

namespace coengage {

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0)
    return requested;
  if (const char* env = std::getenv("COENGAGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0)
      return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

} // namespace coengage

#include "spoly/parallel.hpp"

#include <cstdlib>
#include <string>

namespace spoly {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SPOLY_LAB_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

} // namespace spoly

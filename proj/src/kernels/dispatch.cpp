#include "cascade/kernels/kernels.hpp"

namespace cascade::kernels {

namespace {
const Dispatch* g_active = nullptr;
} // namespace

// Selection is expected to happen once at startup, before workers spawn.
const Dispatch& active() {
    if (g_active == nullptr) {
        const Dispatch* best = avx2();
        g_active = best != nullptr ? best : &scalar();
    }
    return *g_active;
}

bool select(std::string_view name) {
    if (name == "scalar") {
        g_active = &scalar();
        return true;
    }
    if (name == "avx2") {
        const Dispatch* d = avx2();
        if (d == nullptr) return false;
        g_active = d;
        return true;
    }
    if (name == "auto") {
        g_active = nullptr;
        (void)active();
        return true;
    }
    return false;
}

} // namespace cascade::kernels

// Copyright 2026 The cavity-blockade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blockade/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace blockade::kern {

namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* pick_default() {
    if (const char* env = std::getenv("BLOCKADE_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_table;
#if defined(__x86_64__)
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return &avx2_table;
#endif
    }
#if defined(__x86_64__)
    if (cpu_has_avx2()) return &avx2_table;
#endif
    return &scalar_table;
}

} // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& active() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = pick_default();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

bool set_impl(Impl which) {
    switch (which) {
        case Impl::Auto:
            g_active.store(pick_default(), std::memory_order_release);
            return true;
        case Impl::Scalar:
            g_active.store(&scalar_table, std::memory_order_release);
            return true;
        case Impl::Avx2:
#if defined(__x86_64__)
            if (cpu_has_avx2()) {
                g_active.store(&avx2_table, std::memory_order_release);
                return true;
            }
#endif
            return false;
    }
    return false;
}

const char* active_name() { return active().name; }

} // namespace blockade::kern

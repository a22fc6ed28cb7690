// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_THREADING_HPP
#define HETMETA_THREADING_HPP

#include <cstddef>
#include <functional>

namespace hetmeta {

// Worker count resolution: an explicit request wins, otherwise the
// HETNET_META_THREADS environment variable, otherwise hardware concurrency.
// The environment variable always acts as an upper cap.  Returns >= 1.
int resolve_thread_count(int requested = 0);

// Runs fn(i) for i in [0, n) partitioned into contiguous static blocks.
// fn must only write to per-index slots so the result is independent of the
// thread count.
void parallel_for_index(std::size_t n, int n_threads,
                        const std::function<void(std::size_t)>& fn);

}  // namespace hetmeta

#endif  // HETMETA_THREADING_HPP

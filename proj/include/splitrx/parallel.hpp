// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

namespace splitrx {

// Worker-pool width for Monte-Carlo loops. 0 restores the hardware default.
void set_num_threads(int n);
int num_threads();

// Runs fn(chunk_index, first_item, item_count) for fixed-size chunks covering
// [0, n_items). Chunk boundaries depend only on (n_items, chunk_size), never on
// the worker count, so per-chunk results reduced in chunk order are
// bit-identical for any parallelism.
void for_each_chunk(std::int64_t n_items, std::int64_t chunk_size,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

inline std::int64_t chunk_count(std::int64_t n_items, std::int64_t chunk_size) {
    return (n_items + chunk_size - 1) / chunk_size;
}

}  // namespace splitrx

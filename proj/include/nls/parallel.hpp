#pragma once

#include <cstddef>
#include <functional>

namespace nls {

/// Caps the number of worker threads used by row-parallel loops.
/// 0 selects std::thread::hardware_concurrency(). The library default is 1.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(begin, end) over contiguous row blocks covering [0, rows).
/// Bodies must write disjoint outputs; results never depend on the split.
void parallel_rows(std::size_t rows, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace nls

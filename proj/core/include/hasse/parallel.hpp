#pragma once

#include <atomic>
#include <cstddef>
#include <functional>

namespace hasse {

/// Number of workers to use when the caller passes 0.
unsigned default_workers();

/// Runs body(task) for every task in [0, tasks) on up to `workers`
/// threads.  Tasks are claimed in increasing index order; the caller owns
/// the per-task result slots, so merged output never depends on the
/// worker count.  Exceptions from body are rethrown (lowest task first).
void parallel_for(std::size_t tasks, unsigned workers, const std::function<void(std::size_t)>& body);

/// Like parallel_for, but body returns true to report a hit.  Tasks with an
/// index above the lowest hit so far are skipped, every task below it still
/// runs.  Returns the lowest hit index, or `tasks` if none.
std::size_t parallel_find_first(std::size_t tasks, unsigned workers,
                                const std::function<bool(std::size_t)>& body);

}  // namespace hasse

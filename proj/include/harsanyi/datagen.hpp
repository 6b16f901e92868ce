#pragma once

#include <cstdint>
#include <filesystem>

namespace harsanyi::datagen {

// Complete set of terminal tic-tac-toe boards (x moves first, play stops at
// the first three-in-a-row or a full board), deduplicated and sorted, in the
// standard file format: 9 cells from {x,o,b} plus positive/negative.
// Produces 958 rows, 626 positive. Returns the row count.
size_t write_tictactoe(const std::filesystem::path& path);

// Synthetic indoor-localization dataset in the wifi file schema: 7 integer
// RSSI columns plus a room label 1-4, rows_per_room samples per room.
// Signals follow a log-distance path-loss model around fixed access points
// with seeded position and measurement noise. Returns the row count.
size_t write_wifi(const std::filesystem::path& path, uint64_t seed = 20240925,
                  size_t rows_per_room = 500);

}  // namespace harsanyi::datagen

#include "harsanyi/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "harsanyi/rng.hpp"

namespace harsanyi::datagen {

namespace {

using Board = std::array<signed char, 9>;

constexpr int kLines[8][3] = {
    {0, 1, 2}, {3, 4, 5}, {6, 7, 8},
    {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
    {0, 4, 8}, {2, 4, 6},
};

int board_winner(const Board& b) {
    for (const auto& line : kLines) {
        const signed char v = b[static_cast<size_t>(line[0])];
        if (v != 0 && v == b[static_cast<size_t>(line[1])] && v == b[static_cast<size_t>(line[2])]) {
            return v;
        }
    }
    return 0;
}

void enumerate_terminal(Board& board, int player, std::set<Board>& finals) {
    const int winner = board_winner(board);
    bool full = true;
    for (signed char c : board) {
        if (c == 0) { full = false; break; }
    }
    if (winner != 0 || full) {
        finals.insert(board);
        return;
    }
    for (size_t i = 0; i < 9; ++i) {
        if (board[i] != 0) continue;
        board[i] = static_cast<signed char>(player);
        enumerate_terminal(board, -player, finals);
        board[i] = 0;
    }
}

}  // namespace

size_t write_tictactoe(const std::filesystem::path& path) {
    Board board{};
    std::set<Board> finals;
    enumerate_terminal(board, 1, finals);

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const Board& b : finals) {
        for (signed char c : b) {
            out << (c == 1 ? 'x' : c == -1 ? 'o' : 'b') << ',';
        }
        out << (board_winner(b) == 1 ? "positive" : "negative") << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
    return finals.size();
}

size_t write_wifi(const std::filesystem::path& path, uint64_t seed, size_t rows_per_room) {
    // 2x2 room grid on a 10x10 floor. Each room hosts one access point; three
    // more sit in the corridor. Signals follow log-distance path loss with a
    // per-wall attenuation, so every room carries a crisp fingerprint
    // dominated by its own access point.
    constexpr double kRoomCenters[4][2] = {
        {2.5, 2.5}, {7.5, 2.5}, {2.5, 7.5}, {7.5, 7.5},
    };
    constexpr double kAccessPoints[7][2] = {
        {2.5, 2.5}, {7.5, 2.5}, {2.5, 7.5}, {7.5, 7.5},
        {5.0, 5.0}, {5.0, 0.5}, {0.5, 5.0},
    };
    constexpr double kPathLossExponent = 2.0;
    constexpr double kTxPower = -30.0;
    constexpr double kWallAttenuationDb = 18.0;
    constexpr double kPositionJitter = 1.2;
    constexpr double kMeasurementNoiseDb = 2.0;
    constexpr double kOpenDoorProbability = 0.05;

    // Zones 0..3 are the rooms, zone 4 the corridor access points.
    auto zone_of = [](double x, double y) { return (x > 5.0 ? 1 : 0) + (y > 5.0 ? 2 : 0); };
    auto walls_between = [](int a, int b) {
        if (a == 4 || b == 4) return 1;
        return ((a & 1) != (b & 1) ? 1 : 0) + ((a >> 1) != (b >> 1) ? 1 : 0);
    };

    Rng rng(seed);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");

    size_t rows = 0;
    for (int room = 0; room < 4; ++room) {
        const double lox = (room & 1) ? 5.4 : 0.4, hix = (room & 1) ? 9.6 : 4.6;
        const double loy = (room & 2) ? 5.4 : 0.4, hiy = (room & 2) ? 9.6 : 4.6;
        for (size_t s = 0; s < rows_per_room; ++s) {
            const double px =
                std::clamp(kRoomCenters[room][0] + kPositionJitter * rng.next_gaussian(), lox, hix);
            const double py =
                std::clamp(kRoomCenters[room][1] + kPositionJitter * rng.next_gaussian(), loy, hiy);
            // Occasionally a door to an adjacent room stands open and removes
            // that wall from every path into the neighbouring zone.
            int open_zone = -1;
            if (rng.next_double() < kOpenDoorProbability) {
                open_zone = (rng.next_double() < 0.5) ? (room ^ 1) : (room ^ 2);
            }
            for (int j = 0; j < 7; ++j) {
                const double dx = px - kAccessPoints[j][0];
                const double dy = py - kAccessPoints[j][1];
                const double dist = std::max(std::sqrt(dx * dx + dy * dy), 0.8);
                const int ap_zone = j < 4 ? j : 4;
                int walls = walls_between(zone_of(px, py), ap_zone);
                if (ap_zone == open_zone && walls > 0) --walls;
                double rssi = kTxPower - 10.0 * kPathLossExponent * std::log10(dist) -
                              kWallAttenuationDb * walls + kMeasurementNoiseDb * rng.next_gaussian();
                rssi = std::clamp(std::round(rssi), -95.0, -20.0);
                out << static_cast<long>(rssi) << '\t';
            }
            out << (room + 1) << '\n';
            ++rows;
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
    return rows;
}

}  // namespace harsanyi::datagen

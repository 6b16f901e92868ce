#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "harsanyi/datagen.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Writes the bundled dataset files (tic-tac-toe endgames, synthetic wifi)"};
    std::string out_dir = "data";
    uint64_t wifi_seed = 20240925;
    size_t rows_per_room = 500;
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--wifi-seed", wifi_seed, "seed for the wifi simulator")
        ->capture_default_str();
    app.add_option("--rows-per-room", rows_per_room, "wifi samples per room")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out_dir);
        const auto dir = std::filesystem::path(out_dir);
        const size_t ttt = harsanyi::datagen::write_tictactoe(dir / "tictactoe.csv");
        const size_t wifi = harsanyi::datagen::write_wifi(dir / "wifi.txt", wifi_seed,
                                                          rows_per_room);
        std::printf("wrote %zu tic-tac-toe rows and %zu wifi rows to %s\n", ttt, wifi,
                    out_dir.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

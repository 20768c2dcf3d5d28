#include <cstdio>
#include <fstream>
#include <string>

#include "evdf/edf.hpp"
#include "fixtures.hpp"

using namespace evdf;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <golden-dir>\n", argv[0]);
        return 1;
    }
    const std::string dir = argv[1];
    write_edf_file(dir + "/" + testing::kGoldenEmpty, testing::golden_empty_frame(), Compression::None);
    write_edf_file(dir + "/" + testing::kGoldenMixed, testing::golden_mixed_frame(), Compression::None);
    write_edf_file(dir + "/" + testing::kGoldenDeflate, testing::golden_deflate_frame(), Compression::Deflate);
    return 0;
}

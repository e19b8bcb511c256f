#pragma once

#include "freearr/io.hpp"

#include <string>

inline freearr::Arrangement bench_fixture(const std::string& name) {
    return freearr::load_arrangement(std::string(FREEARR_BENCH_DATA_DIR) + "/" + name);
}

inline const char* const kBenchFixtures[] = {"boolean.json", "braid6.json", "free_n13.json", "free_n19.json",
                                             "free_n20.json"};

#pragma once

#include <map>

#include "dbf/toc.hpp"

namespace fixtures {

// printed strings of the d=2, n=2 example tree
inline const dbf::Symbols kExampleS = {2,  1, 4,  3, 4,  5, 4,  7,  4,  9, 4,  11, 10, 9, 10, 7, 10, 5,
                                    10, 3, 10, 1, 12, 3, 12, 9,  12, 11, 12, 5, 12, 7,  6,  5, 6,  11,
                                    6,  9, 6,  3, 6,  1, 8,  3,  8, 5,  8, 7,  8,  9, 8,  11};
inline const dbf::Symbols kExampleQ = {8, 11, 8,  9, 8,  7, 8,  5,  8,  3, 8,  1,  6,  3, 6,  9, 6,  11,
                                    6, 5,  6,  7, 12, 5, 12, 11, 12, 9, 12, 3,  12, 1, 10, 3, 10, 5,
                                    10, 7, 10, 9, 10, 11, 4, 9,  4, 7,  4, 5,  4,  3, 4,  1, 2,  1};

inline dbf::ToC example_toc() {
    using dbf::Connector;
    Connector swapped = Connector::from_perm({2, 1});
    Connector id = Connector::identity(2);
    std::map<dbf::Name, Connector> t;
    t.emplace(dbf::Name{}, swapped);
    t.emplace(dbf::Name{6}, swapped);
    t.emplace(dbf::Name{3}, swapped);
    t.emplace(dbf::Name{2}, id);
    t.emplace(dbf::Name{4}, id);
    t.emplace(dbf::Name{5}, id);
    return dbf::ToC(2, 2, std::move(t));
}

}  // namespace fixtures

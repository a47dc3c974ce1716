#include "tilecache/worked_examples.hpp"

#include <string>

namespace tilecache::worked {

const std::vector<TableRow>& lru_table() {
    static const std::vector<TableRow> rows = {
        {3, {"a00", "b00", "c00", "--", "--", "--", "--", "--", "--", "--", "--", "--"},
         {12, 13, 14, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 3, 0},
        {6, {"a00", "b00", "c00", "a01", "b10", "--", "--", "--", "--", "--", "--", "--"},
         {12, 13, 17, 15, 16, 5, 6, 7, 8, 9, 10, 11}, 5, 0},
        {9, {"a00", "b00", "c00", "a01", "b10", "a02", "b20", "--", "--", "--", "--", "--"},
         {12, 13, 20, 15, 16, 18, 19, 7, 8, 9, 10, 11}, 7, 0},
        {12, {"a00", "b00", "c00", "a01", "b10", "a02", "b20", "a03", "b30", "--", "--", "--"},
         {12, 13, 23, 15, 16, 18, 19, 21, 22, 9, 10, 11}, 9, 0},
        {15, {"a00", "b00", "c00", "a01", "b10", "a02", "b20", "a03", "b30", "b01", "c01", "--"},
         {24, 13, 23, 15, 16, 18, 19, 21, 22, 25, 26, 11}, 11, 0},
        {18, {"a00", "b00", "c00", "a01", "b10", "a02", "b20", "a03", "b30", "b01", "c01", "b11"},
         {24, 13, 23, 27, 16, 18, 19, 21, 22, 25, 29, 28}, 12, 0},
        {21, {"a00", "b21", "c00", "a01", "b10", "a02", "b20", "a03", "b30", "b01", "c01", "b11"},
         {24, 31, 23, 27, 16, 30, 19, 21, 22, 25, 32, 28}, 13, 0},
        {24, {"a00", "b21", "c00", "a01", "b31", "a02", "b20", "a03", "b30", "b01", "c01", "b11"},
         {24, 31, 23, 27, 34, 30, 19, 33, 22, 25, 35, 28}, 14, 0},
        {27, {"a00", "b21", "c00", "a01", "b31", "a02", "b02", "a03", "c02", "b01", "c01", "b11"},
         {36, 31, 23, 27, 34, 30, 37, 33, 38, 25, 35, 28}, 16, 0},
        {30, {"a00", "b21", "b12", "a01", "b31", "a02", "b02", "a03", "c02", "b01", "c01", "b11"},
         {36, 31, 40, 39, 34, 30, 37, 33, 41, 25, 35, 28}, 17, 1},
        {33, {"a00", "b21", "b12", "a01", "b31", "a02", "b02", "a03", "c02", "b22", "c01", "b11"},
         {36, 31, 40, 39, 34, 42, 37, 33, 44, 43, 35, 28}, 18, 1},
        {36, {"a00", "b21", "b12", "a01", "b31", "a02", "b02", "a03", "c02", "b22", "c01", "b32"},
         {36, 31, 40, 39, 34, 42, 37, 45, 47, 43, 35, 46}, 19, 1},
        {39, {"a00", "b03", "b12", "a01", "c03", "a02", "b02", "a03", "c02", "b22", "c01", "b32"},
         {48, 49, 40, 39, 50, 42, 37, 45, 47, 43, 35, 46}, 21, 1},
        {42, {"a00", "b03", "b12", "a01", "c03", "a02", "b02", "a03", "c02", "b22", "b13", "b32"},
         {48, 49, 40, 51, 53, 42, 37, 45, 47, 43, 52, 46}, 22, 2},
        {45, {"a00", "b03", "b12", "a01", "c03", "a02", "b23", "a03", "c02", "b22", "b13", "b32"},
         {48, 49, 40, 51, 56, 54, 55, 45, 47, 43, 52, 46}, 23, 2},
        {48, {"a00", "b03", "b33", "a01", "c03", "a02", "b23", "a03", "c02", "b22", "b13", "b32"},
         {48, 49, 58, 51, 59, 54, 55, 57, 47, 43, 52, 46}, 24, 2},
        {51, {"a00", "b03", "b33", "a01", "c03", "a02", "b23", "a03", "c10", "a10", "b13", "b00"},
         {48, 49, 58, 51, 59, 54, 55, 57, 62, 60, 52, 61}, 27, 3},
        {54, {"a11", "b10", "b33", "a01", "c03", "a02", "b23", "a03", "c10", "a10", "b13", "b00"},
         {63, 64, 58, 51, 59, 54, 55, 57, 65, 60, 52, 61}, 29, 3},
        {57, {"a11", "b10", "b33", "a12", "c03", "a02", "b23", "a03", "c10", "a10", "b20", "b00"},
         {63, 64, 58, 66, 59, 54, 55, 57, 68, 60, 67, 61}, 31, 3},
        {60, {"a11", "b10", "b33", "a12", "c03", "a13", "b30", "a03", "c10", "a10", "b20", "b00"},
         {63, 64, 58, 66, 59, 69, 70, 57, 71, 60, 67, 61}, 33, 3},
    };
    return rows;
}

EntryId entry_from_name(std::string_view name) {
    if (name == "--") return kEmpty;
    if (name.size() != 3 || name[0] < 'a' || name[0] > 'c' || name[1] < '0' || name[1] > '3' ||
        name[2] < '0' || name[2] > '3')
        throw ConfigError("bad entry name '" + std::string(name) + "'");
    const IdScheme ids(kTableN);
    return ids.id(static_cast<Role>(name[0] - 'a'), name[1] - '0', name[2] - '0');
}

const std::vector<Checkpoint>& stated_checkpoints() {
    static const std::vector<Checkpoint> points = {
        {3, 3, 0}, {12, 9, 0}, {15, 11, 0}, {33, 17, 1}, {48, 24, 2}, {51, 27, 3}, {63, 35, 4},
    };
    return points;
}

FastCacheState fast_example_before() {
    FastCacheState s;
    s.id_array = {0, 4, 8, 2, 5, 6};
    s.timestamps = {12, 7, 11, 9, 10, 13};
    s.write_or_no = {0, 0, 0, 0, 0, 0};
    s.next_younger = {5, 3, 0, 4, 2, -1};
    s.next_older = {2, -1, 4, 1, 3, 0};
    s.oldest = 1;
    s.youngest = 5;
    s.index_in_cache = {0, -1, 3, -1, 1, 4, 5, -1, 2, -1, -1, -1};
    s.global_time = 14;
    return s;
}

FastCacheState fast_example_after() {
    FastCacheState s;
    s.id_array = {0, 10, 8, 2, 5, 6};
    s.timestamps = {12, 14, 11, 9, 10, 13};
    s.write_or_no = {0, 1, 0, 0, 0, 0};
    s.next_younger = {5, -1, 0, 4, 2, 1};
    s.next_older = {2, 5, 4, -1, 3, 0};
    s.oldest = 3;
    s.youngest = 1;
    s.index_in_cache = {0, -1, 3, -1, -1, 4, 5, -1, 2, -1, 1, -1};
    s.global_time = 15;
    return s;
}

}  // namespace tilecache::worked

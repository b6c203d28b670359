#include "shrinkpath/dataset.hpp"

#include <stdexcept>

namespace shrinkpath {

Table portland_dataset() {
    Table t;
    t.name = "portland";
    t.column_names = {"heat", "p3ca", "p3cs", "p4caf", "p2cs"};
    t.columns = {
        {78.5, 74.3, 104.3, 87.6, 95.9, 109.2, 102.7, 72.5, 93.1, 115.9, 83.8, 113.3, 109.4},
        {7, 1, 11, 11, 7, 11, 3, 1, 2, 21, 1, 11, 10},
        {26, 29, 56, 31, 52, 55, 71, 31, 54, 47, 40, 66, 68},
        {6, 15, 8, 8, 6, 9, 17, 22, 18, 4, 23, 9, 8},
        {60, 52, 20, 47, 33, 22, 6, 44, 22, 26, 34, 12, 12},
    };
    return t;
}

Table builtin_dataset(const std::string& name) {
    if (name == "portland") return portland_dataset();
    throw std::invalid_argument("unknown built-in dataset: '" + name + "'");
}

}  // namespace shrinkpath

#pragma once
#include <iostream>
#include <string>
#include <vector>
namespace voa {
inline int run_cli(const std::vector<std::string>&, std::ostream&, std::ostream& err) {
    err << "not implemented yet\n";
    return 2;
}
}

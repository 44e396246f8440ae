#ifndef WFST_CLI_HPP_
#define WFST_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace wfst {

// Entry point of the `wfst` tool. `args` excludes the program name. Machines
// named "-" are read from `in`. Returns 0 on success, 2 on a usage error and
// 1 on a data error.
int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace wfst

#endif  // WFST_CLI_HPP_

#ifndef AEQ_CLI_HPP_
#define AEQ_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace aeq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // checks failed, counterexample, or no verdict
inline constexpr int kExitUsage = 2;

/* Runs one command; `args` excludes the program name. The report goes to
 * `out` (or --output), progress and errors to `err`. Setting AEQ_VERBOSITY=0
 * silences progress. */
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace aeq::cli

#endif  // AEQ_CLI_HPP_

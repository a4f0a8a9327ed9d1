#pragma once

namespace misembed {

/// The misembed command line. Returns the process exit code: 0 ok,
/// 1 usage/parse/other error, 2 invariant violation or failed --check,
/// 3 budget exceeded. Errors go to stderr as one JSON record.
int cli_main(int argc, const char *const *argv);

} // namespace misembed

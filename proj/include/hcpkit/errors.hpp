#pragma once

#include <stdexcept>
#include <string>

namespace hcpkit {

/* Base class of every error raised by the library.  The CLI maps the
 * subclasses onto its exit codes. */
class error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class invalid_argument : public error
{
  public:
    using error::error;
};

class precision_exhausted : public error
{
  public:
    using error::error;
};

class cap_exceeded : public error
{
  public:
    using error::error;
};

class corrupt_cache : public error
{
  public:
    using error::error;
};

class unsupported_level : public error
{
  public:
    using error::error;
};

class field_mismatch : public error
{
  public:
    using error::error;
};

class field_too_large : public error
{
  public:
    using error::error;
};

class supersingular_input : public error
{
  public:
    using error::error;
};

class not_inert : public error
{
  public:
    using error::error;
};

class not_found : public error
{
  public:
    using error::error;
};

class precondition_failed : public error
{
  public:
    using error::error;
};

} // namespace hcpkit

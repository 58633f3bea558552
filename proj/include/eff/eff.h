/* C interface to the eff interpreter. */
#ifndef EFF_EFF_H
#define EFF_EFF_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(EFF_BUILDING_LIBRARY)
#define EFF_API __attribute__((visibility("default")))
#else
#define EFF_API
#endif

typedef struct eff_session eff_session;

/* Values 1-3 double as the command-line exit codes. */
typedef enum eff_status {
  EFF_OK = 0,
  EFF_ERR_RUNTIME = 1,
  EFF_ERR_TYPE = 2,
  EFF_ERR_PARSE = 3,
  EFF_ERR_IO = 4,
  EFF_ERR_INVALID_ARGUMENT = 5,
  EFF_ERR_INCOMPLETE_INPUT = 6, /* source ended in the middle of an item */
  EFF_ERR_ABORTED = 7,          /* a callback asked to stop */
  EFF_ERR_INTERNAL = 8
} eff_status;

typedef enum eff_sequencing {
  EFF_SEQUENCING_WARN = 0,
  EFF_SEQUENCING_ERROR = 1,
  EFF_SEQUENCING_SILENT = 2
} eff_sequencing;

/* Receives bytes written with std#write. Nonzero return aborts the run. */
typedef int (*eff_write_fn)(void* user, const char* data, size_t len);
/* Returns one line without its terminator, or NULL at end of input. The
   buffer must stay valid until the next call. */
typedef const char* (*eff_read_line_fn)(void* user, size_t* len);
/* Receives rendered warnings. */
typedef void (*eff_diagnostic_fn)(void* user, const char* message);
/* Called after each top-level computation; type is NULL when type checking
   is off. */
typedef void (*eff_echo_fn)(void* user, const char* value, const char* type);

typedef struct eff_options {
  int typecheck;             /* default 1 */
  eff_sequencing sequencing; /* default EFF_SEQUENCING_WARN */
  const char* prelude_dir;   /* NULL: $EFF_PRELUDE or the built-in path; "": none */
  eff_write_fn write;        /* NULL: standard output */
  eff_read_line_fn read_line; /* NULL: standard input */
  eff_diagnostic_fn diagnostic; /* NULL: standard error */
  eff_echo_fn echo;          /* NULL: no echo */
  void* user;
} eff_options;

EFF_API void eff_options_init(eff_options* options);

/* Creates a session and loads the prelude. On a prelude failure the session
   is still returned so eff_error_message can explain; destroy it either way. */
EFF_API eff_status eff_session_create(const eff_options* options, eff_session** out);
EFF_API void eff_session_destroy(eff_session* session);

/* Runs every item of the source; definitions persist in the session. */
EFF_API eff_status eff_run_source(eff_session* session, const char* source, size_t len,
                                  const char* name);
EFF_API eff_status eff_run_file(eff_session* session, const char* path);

/* "<file>:<line>:<col>: <category>: <message>" for the last failure, or "". */
EFF_API const char* eff_error_message(const eff_session* session);
/* Printed value and type of the last top-level computation, or "". */
EFF_API const char* eff_last_value(const eff_session* session);
EFF_API const char* eff_last_type(const eff_session* session);

/* Desugared program as S-expressions; free the result with eff_string_free. */
EFF_API eff_status eff_dump_source(const char* source, size_t len, char** out, char** error);
EFF_API void eff_string_free(char* s);

EFF_API const char* eff_status_name(eff_status status);
EFF_API const char* eff_version(void);

#ifdef __cplusplus
}
#endif

#endif /* EFF_EFF_H */

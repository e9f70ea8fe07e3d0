#ifndef QECT_H
#define QECT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QectStatus {
  QECT_STATUS_OK = 0,
  QECT_STATUS_NULL_ARGUMENT = 1,
  QECT_STATUS_INVALID_UTF8 = 2,
  QECT_STATUS_PARSE_ERROR = 3,
  QECT_STATUS_INVALID_CODE = 4,
  QECT_STATUS_ENUMERATION_ERROR = 5,
  QECT_STATUS_TENSOR_ERROR = 6,
  QECT_STATUS_INVALID_ARGUMENT = 7,
  QECT_STATUS_PANIC = 8,
} QectStatus;

/*
 Elaborated circuit handle.
 */
typedef struct QectCircuit QectCircuit;

/*
 Stabilizer code handle.
 */
typedef struct QectCode QectCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success. Valid until
 the next call on this thread.
 */
const char *qect_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *qect_version(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void qect_string_free(char *s);

/*
 Sizes the enumeration worker pool. Only the first call before any enumeration has effect.
 */
enum QectStatus qect_set_threads(size_t n);

/*
 Built-in code by name: `perfect`, `surface3`, `surface5` and their aliases.

 # Safety
 `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QectStatus qect_code_builtin(const char *name, struct QectCode **out);

/*
 Code from generator text, one signed Pauli string per line.

 # Safety
 `src` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QectStatus qect_code_parse(const char *src, struct QectCode **out);

/*
 # Safety
 `code` must be null or a handle from this library, not yet freed.
 */
void qect_code_free(struct QectCode *code);

/*
 Number of physical qubits, or 0 for a null handle.

 # Safety
 `code` must be null or a live handle.
 */
size_t qect_code_n(const struct QectCode *code);

/*
 Number of logical qubits, or 0 for a null handle.

 # Safety
 `code` must be null or a live handle.
 */
size_t qect_code_k(const struct QectCode *code);

/*
 Path report (A_path, B_path, cosets, totals, checks, meta) as JSON.

 # Safety
 `code` must be a live handle and `out` a valid pointer.
 */
enum QectStatus qect_paths_json(const struct QectCode *code,
                                bool include_idle,
                                bool merge,
                                uint32_t max_degree,
                                char **out);

/*
 Coset enumerator for a named logical (`X`, `Y`, `Z`, or `X1`, ... for k > 1) as JSON.

 # Safety
 `code` must be a live handle, `logical` a NUL-terminated string and `out` valid.
 */
enum QectStatus qect_coset_json(const struct QectCode *code,
                                const char *logical,
                                bool include_idle,
                                bool merge,
                                uint32_t max_degree,
                                char **out);

/*
 Shor-Laflamme enumerators `{"A": ..., "B": ...}` as JSON.

 # Safety
 `code` must be a live handle and `out` a valid pointer.
 */
enum QectStatus qect_shor_laflamme_json(const struct QectCode *code, char **out);

/*
 Parses, checks and elaborates circuit source.

 # Safety
 `src` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QectStatus qect_circuit_parse(const char *src, struct QectCircuit **out);

/*
 # Safety
 `circuit` must be null or a handle from this library, not yet freed.
 */
void qect_circuit_free(struct QectCircuit *circuit);

/*
 Circuit tensor as JSON; with `traced`, every noise group is traced against its weights.

 # Safety
 `circuit` must be a live handle and `out` a valid pointer.
 */
enum QectStatus qect_circuit_tensor_json(const struct QectCircuit *circuit,
                                         bool traced,
                                         char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QECT_H */

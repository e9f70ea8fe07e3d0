#include <stdio.h>
#include <string.h>

#include "qect.h"

int main(void) {
    QectCode *code = NULL;
    if (qect_code_builtin("perfect", &code) != QECT_STATUS_OK) {
        fprintf(stderr, "%s\n", qect_last_error());
        return 1;
    }
    char *json = NULL;
    if (qect_paths_json(code, false, true, 1, &json) != QECT_STATUS_OK) {
        fprintf(stderr, "%s\n", qect_last_error());
        return 1;
    }
    int ok = strstr(json, "\"A_path\"") != NULL;
    qect_string_free(json);
    qect_code_free(code);

    QectCircuit *circuit = NULL;
    if (qect_circuit_parse("input qubit a\ngate Q a\n", &circuit) != QECT_STATUS_PARSE_ERROR) {
        return 1;
    }
    printf("%s\n", qect_last_error());
    return ok ? 0 : 1;
}

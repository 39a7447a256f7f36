/* Parse a form, model a task, print the total in seconds. */
#include <stdio.h>
#include "klmfa.h"

int main(void) {
    const char *html = "<form><input id=\"q\"><button id=\"go\">Go</button></form>";
    const char *task = "{\"steps\":[{\"element_id\":\"q\",\"action\":{\"type\":\"type\",\"value\":\"hi\"}},"
                       "{\"element_id\":\"go\",\"action\":{\"type\":\"press\"}}]}";
    KlmDocument *doc = NULL;
    KlmResult *res = NULL;
    if (klm_document_parse_html(html, "smoke", NULL, &doc) != KLM_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", klm_last_error_message());
        return 1;
    }
    if (klm_model(doc, task, "{\"fitts\":{\"a\":0.1,\"b\":0.15}}", &res) != KLM_STATUS_OK) {
        fprintf(stderr, "model: %s\n", klm_last_error_message());
        klm_document_free(doc);
        return 1;
    }
    printf("%llu\n", (unsigned long long)klm_result_total_us(res));
    klm_result_free(res);
    klm_document_free(doc);
    return 0;
}

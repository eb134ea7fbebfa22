#ifndef FWSTREAM_H
#define FWSTREAM_H

/* C interface to the stream engine. All calls go through an opaque engine
 * handle; request and response payloads are UTF-8 JSON strings. Every entry
 * point returns a status code:
 *   0  ok
 *   1  usage error (bad arguments or parameters)
 *   2  data error (malformed or inconsistent input data)
 *   3  internal invariant violation
 * On failure the response pointer is left NULL and fws_engine_last_error()
 * returns a message valid until the next call on the same engine.
 *
 * Request schemas (all fields optional unless noted):
 *
 * fws_gen: {"seed":42, "frequencies":[500,125], "durationMinutes":1,
 *           "waveform":"random-uniform"|"sine+noise", "overlapFraction":1.0,
 *           "segmentCount":10, "divergent":false, "injectCount":0,
 *           "windowMs":60000, "out":"prefix" (required)}
 *   -> {"files":[...], "events":N, "truthFile":"..."?}
 *
 * fws_plan: {"query":"listing1"|"endtoend"|"identity"|<toolkit op>,
 *            "windowMs":60000, "gapLimit":..., "fillValue":...,
 *            "targetPeriod":...}
 *   -> {"dimension":..., "totalBytes":..., "planDump":"...",
 *       "traceLog":[...]}
 *
 * fws_bench: {"bench":<name>, "engine":"eager"|"targeted", "seed":...,
 *             "durationMinutes":..., "overlapFraction":..., "segmentCount":...,
 *             "divergent":false, "waveform":..., "windowMs":..., "trials":10,
 *             "parallel":1, "out":"sink.csv"?, "data":["in.csv",...]?}
 *   -> {"bench":..., "engine":..., "trials":[{...} per trial],
 *       "summary":{"meanWallMs":..., "stdWallMs":...,
 *                  "throughputEventsPerSec":..., "memoryPlanBytes":...}}
 *
 * fws_detect: {"seed":..., "durationMinutes":..., "frequencyHz":125,
 *              "injectCount":49, "template":"file"?, "radius":-1, "hop":-1,
 *              "threshold":0.3, "normalize":true, "mode":"none"|"drop"|"keep",
 *              "out":"matches.csv"?, "data":"in.csv"?}
 *   -> {"matches":[[lo,hi],...], "evaluations":..., "wallMs":...,
 *       "recall":...?, "fpFraction":...?}
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fws_engine fws_engine;

int fws_engine_create(fws_engine** out);
void fws_engine_destroy(fws_engine* e);

/* Message for the most recent failed call; never NULL after a failure. */
const char* fws_engine_last_error(const fws_engine* e);

int fws_gen(fws_engine* e, const char* request_json, char** response_json);
int fws_plan(fws_engine* e, const char* request_json, char** response_json);
int fws_bench(fws_engine* e, const char* request_json, char** response_json);
int fws_detect(fws_engine* e, const char* request_json, char** response_json);

/* Frees a response buffer returned by any call above. */
void fws_buffer_free(char* buf);

#ifdef __cplusplus
}
#endif

#endif /* FWSTREAM_H */

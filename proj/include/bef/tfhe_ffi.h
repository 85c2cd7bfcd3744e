/* C declarations for the TFHE-rs boolean shim (ffi/tfhe-shim). */
#ifndef BEF_TFHE_FFI_H
#define BEF_TFHE_FFI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct BefClientKey BefClientKey;
typedef struct BefServerKey BefServerKey;
typedef struct BefCiphertext BefCiphertext;

typedef struct BefBuffer {
    uint8_t* data;
    size_t len;
} BefBuffer;

void bef_tfhe_buffer_free(BefBuffer buf);

int32_t bef_tfhe_keygen(uint64_t seed, int32_t use_seed, BefClientKey** out_ck,
                        BefServerKey** out_sk);
void bef_tfhe_client_key_free(BefClientKey* ck);
void bef_tfhe_server_key_free(BefServerKey* sk);
void bef_tfhe_ciphertext_free(BefCiphertext* ct);

BefCiphertext* bef_tfhe_encrypt(const BefClientKey* ck, int32_t bit);
int32_t bef_tfhe_decrypt(const BefClientKey* ck, const BefCiphertext* ct);
BefCiphertext* bef_tfhe_trivial(const BefServerKey* sk, int32_t bit);

/* kind: 0 = AND, 1 = OR, 2 = XOR */
BefCiphertext* bef_tfhe_gate2(const BefServerKey* sk, int32_t kind,
                              const BefCiphertext* a, const BefCiphertext* b);
BefCiphertext* bef_tfhe_not(const BefServerKey* sk, const BefCiphertext* a);
BefCiphertext* bef_tfhe_mux(const BefServerKey* sk, const BefCiphertext* sel,
                            const BefCiphertext* then_ct, const BefCiphertext* else_ct);

int32_t bef_tfhe_client_key_serialize(const BefClientKey* ck, BefBuffer* out);
BefClientKey* bef_tfhe_client_key_deserialize(const uint8_t* data, size_t len);
int32_t bef_tfhe_server_key_serialize(const BefServerKey* sk, BefBuffer* out);
BefServerKey* bef_tfhe_server_key_deserialize(const uint8_t* data, size_t len);
int32_t bef_tfhe_ciphertext_serialize(const BefCiphertext* ct, BefBuffer* out);
BefCiphertext* bef_tfhe_ciphertext_deserialize(const uint8_t* data, size_t len);

#ifdef __cplusplus
}
#endif

#endif /* BEF_TFHE_FFI_H */

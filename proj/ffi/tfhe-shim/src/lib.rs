//! C ABI over the TFHE-rs boolean API (gate bootstrapping).
//!
//! Every returned pointer is owned by the caller and must be released with the
//! matching `_free` function. Functions returning pointers return null on
//! failure; functions returning `i32` use 0 for success, negative for failure.

use std::slice;

use tfhe::boolean::engine::BooleanEngine;
use tfhe::boolean::prelude::*;
use tfhe::core_crypto::commons::generators::DeterministicSeeder;
use tfhe::core_crypto::commons::math::random::Seed;
use tfhe::core_crypto::prelude::DefaultRandomGenerator;

pub struct BefClientKey(ClientKey);
pub struct BefServerKey(ServerKey);
pub struct BefCiphertext(Ciphertext);

#[repr(C)]
pub struct BefBuffer {
    pub data: *mut u8,
    pub len: usize,
}

fn buffer_from_vec(v: Vec<u8>) -> BefBuffer {
    let mut b = v.into_boxed_slice();
    let out = BefBuffer {
        data: b.as_mut_ptr(),
        len: b.len(),
    };
    std::mem::forget(b);
    out
}

/// # Safety
/// `buf` must come from this library and be freed exactly once.
#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_buffer_free(buf: BefBuffer) {
    if !buf.data.is_null() {
        drop(Box::from_raw(slice::from_raw_parts_mut(buf.data, buf.len)));
    }
}

/// Generates a fresh (client, server) key pair with the library's default
/// parameters (>= 128-bit classical security).
///
/// When `use_seed` is non-zero the thread-local engine is replaced with a
/// deterministically seeded one first; key material and all later encryption
/// noise on this thread become reproducible. Test use only.
#[no_mangle]
pub extern "C" fn bef_tfhe_keygen(
    seed: u64,
    use_seed: i32,
    out_ck: *mut *mut BefClientKey,
    out_sk: *mut *mut BefServerKey,
) -> i32 {
    if out_ck.is_null() || out_sk.is_null() {
        return -1;
    }
    if use_seed != 0 {
        let mut seeder = DeterministicSeeder::<DefaultRandomGenerator>::new(Seed(seed as u128));
        BooleanEngine::replace_thread_local(BooleanEngine::new_from_seeder(&mut seeder));
    }
    let (ck, sk) = gen_keys();
    unsafe {
        *out_ck = Box::into_raw(Box::new(BefClientKey(ck)));
        *out_sk = Box::into_raw(Box::new(BefServerKey(sk)));
    }
    0
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_client_key_free(ck: *mut BefClientKey) {
    if !ck.is_null() {
        drop(Box::from_raw(ck));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_server_key_free(sk: *mut BefServerKey) {
    if !sk.is_null() {
        drop(Box::from_raw(sk));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_ciphertext_free(ct: *mut BefCiphertext) {
    if !ct.is_null() {
        drop(Box::from_raw(ct));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_encrypt(ck: *const BefClientKey, bit: i32) -> *mut BefCiphertext {
    let ck = match ck.as_ref() {
        Some(k) => k,
        None => return std::ptr::null_mut(),
    };
    Box::into_raw(Box::new(BefCiphertext(ck.0.encrypt(bit != 0))))
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_decrypt(ck: *const BefClientKey, ct: *const BefCiphertext) -> i32 {
    match (ck.as_ref(), ct.as_ref()) {
        (Some(k), Some(c)) => k.0.decrypt(&c.0) as i32,
        _ => -1,
    }
}

/// Trivial (unencrypted) ciphertext usable as a server-side constant.
#[no_mangle]
pub extern "C" fn bef_tfhe_trivial(sk: *const BefServerKey, bit: i32) -> *mut BefCiphertext {
    let sk = unsafe {
        match sk.as_ref() {
            Some(k) => k,
            None => return std::ptr::null_mut(),
        }
    };
    Box::into_raw(Box::new(BefCiphertext(sk.0.trivial_encrypt(bit != 0))))
}

/// kind: 0 = AND, 1 = OR, 2 = XOR.
#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_gate2(
    sk: *const BefServerKey,
    kind: i32,
    a: *const BefCiphertext,
    b: *const BefCiphertext,
) -> *mut BefCiphertext {
    let (sk, a, b) = match (sk.as_ref(), a.as_ref(), b.as_ref()) {
        (Some(k), Some(a), Some(b)) => (k, a, b),
        _ => return std::ptr::null_mut(),
    };
    let out = match kind {
        0 => sk.0.and(&a.0, &b.0),
        1 => sk.0.or(&a.0, &b.0),
        2 => sk.0.xor(&a.0, &b.0),
        _ => return std::ptr::null_mut(),
    };
    Box::into_raw(Box::new(BefCiphertext(out)))
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_not(
    sk: *const BefServerKey,
    a: *const BefCiphertext,
) -> *mut BefCiphertext {
    let (sk, a) = match (sk.as_ref(), a.as_ref()) {
        (Some(k), Some(a)) => (k, a),
        _ => return std::ptr::null_mut(),
    };
    Box::into_raw(Box::new(BefCiphertext(sk.0.not(&a.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_mux(
    sk: *const BefServerKey,
    sel: *const BefCiphertext,
    then_ct: *const BefCiphertext,
    else_ct: *const BefCiphertext,
) -> *mut BefCiphertext {
    let (sk, s, t, e) = match (sk.as_ref(), sel.as_ref(), then_ct.as_ref(), else_ct.as_ref()) {
        (Some(k), Some(s), Some(t), Some(e)) => (k, s, t, e),
        _ => return std::ptr::null_mut(),
    };
    Box::into_raw(Box::new(BefCiphertext(sk.0.mux(&s.0, &t.0, &e.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_client_key_serialize(
    ck: *const BefClientKey,
    out: *mut BefBuffer,
) -> i32 {
    let ck = match ck.as_ref() {
        Some(k) => k,
        None => return -1,
    };
    match bincode::serialize(&ck.0) {
        Ok(v) => {
            *out = buffer_from_vec(v);
            0
        }
        Err(_) => -2,
    }
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_client_key_deserialize(
    data: *const u8,
    len: usize,
) -> *mut BefClientKey {
    let bytes = slice::from_raw_parts(data, len);
    match bincode::deserialize::<ClientKey>(bytes) {
        Ok(k) => Box::into_raw(Box::new(BefClientKey(k))),
        Err(_) => std::ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_server_key_serialize(
    sk: *const BefServerKey,
    out: *mut BefBuffer,
) -> i32 {
    let sk = match sk.as_ref() {
        Some(k) => k,
        None => return -1,
    };
    match bincode::serialize(&sk.0) {
        Ok(v) => {
            *out = buffer_from_vec(v);
            0
        }
        Err(_) => -2,
    }
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_server_key_deserialize(
    data: *const u8,
    len: usize,
) -> *mut BefServerKey {
    let bytes = slice::from_raw_parts(data, len);
    match bincode::deserialize::<ServerKey>(bytes) {
        Ok(k) => Box::into_raw(Box::new(BefServerKey(k))),
        Err(_) => std::ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_ciphertext_serialize(
    ct: *const BefCiphertext,
    out: *mut BefBuffer,
) -> i32 {
    let ct = match ct.as_ref() {
        Some(c) => c,
        None => return -1,
    };
    match bincode::serialize(&ct.0) {
        Ok(v) => {
            *out = buffer_from_vec(v);
            0
        }
        Err(_) => -2,
    }
}

#[no_mangle]
pub unsafe extern "C" fn bef_tfhe_ciphertext_deserialize(
    data: *const u8,
    len: usize,
) -> *mut BefCiphertext {
    let bytes = slice::from_raw_parts(data, len);
    match bincode::deserialize::<Ciphertext>(bytes) {
        Ok(c) => Box::into_raw(Box::new(BefCiphertext(c))),
        Err(_) => std::ptr::null_mut(),
    }
}

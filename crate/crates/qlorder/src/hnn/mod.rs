//! Words, reduction, and order algorithms for the extension group.

mod britton;
mod ops;
mod word;

pub use britton::{format_general, group_nf, group_nf_str, to_normal_form, GeneralWord, Sign};
pub use ops::{
    divide_star, enumerate_words, inverse_tokens, join_star, l_a_elements, leq_star, min_pair,
    multiply, nf, sigma_elements,
};
pub use word::{
    format_word, parse_gen_word, parse_pos_word, token_length, GenToken, NormalFormWord, PosToken,
    StemWord,
};

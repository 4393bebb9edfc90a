/** Wire-format types for the pitplot service API. */
export {};

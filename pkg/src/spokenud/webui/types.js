/** JSON payloads exchanged with the adjudication service. */
export {};

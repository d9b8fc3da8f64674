// silt-surf/1 documents as served by the session service.
export {};

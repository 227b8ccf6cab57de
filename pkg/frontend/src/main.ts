import { mount } from './app.js';

// Served from /ui by the workbench, or standalone against a base URL
// provided as ?api=http://host:port
const params = new URLSearchParams(window.location.search);
mount(params.get('api') ?? '');

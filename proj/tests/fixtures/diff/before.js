import { api } from './api';
import { store } from './store';

export function loadUser(id) {
  console.log('loading user', id);
  const user = api.get(`/users/${id}`);
  if (!user) {
    console.log('missing user');
    return null;
  }
  store.set('user', user);
  return user;
}

export function saveUser(user) {
  console.log(user);
  validate(user);
  api.post('/users', user);
  console.log('saved');
}

function validate(user) {
  if (!user.name) throw new Error('name required');
  console.log('validated', user.name);
}

export function clear() {
  store.clear();
}
